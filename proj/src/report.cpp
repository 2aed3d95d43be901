#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "plattice/harness.hpp"

namespace plattice {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr const char *csv_header =
    "instance_id,alpha,beta,gamma,a,b,delta,H,quantity,computed,envelope,ratio,pass\n";

nlohmann::json json_number(double v) {
  if (!std::isfinite(v))
    return format_double(v);
  return v;
}

} // namespace

void write_csv(std::ostream &os, const Report &report) {
  os << csv_header;
  for (const BoundReport &r : report.rows) {
    os << r.instance_id << ',' << r.alpha << ',' << r.beta << ',' << r.gamma << ',' << r.a << ','
       << r.b << ',' << (r.delta ? r.delta->to_string() : "") << ','
       << (r.H ? std::to_string(*r.H) : "") << ',' << r.quantity << ','
       << format_double(r.computed) << ',' << format_double(r.envelope) << ','
       << format_double(r.ratio) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  for (const auto &[family, c] : report.fitted_constants)
    os << "fit,,,,,,,,fitted_constant:" << family << ',' << format_double(c) << ",1,"
       << format_double(c) << ",true\n";
}

void write_json(std::ostream &os, const Report &report) {
  nlohmann::json doc;
  doc["fitted_constants"] = nlohmann::json::object();
  for (const auto &[family, c] : report.fitted_constants)
    doc["fitted_constants"][family] = json_number(c);
  doc["rows"] = nlohmann::json::array();
  for (const BoundReport &r : report.rows) {
    nlohmann::json row;
    row["instance_id"] = r.instance_id;
    row["alpha"] = r.alpha.to_string();
    row["beta"] = r.beta.to_string();
    row["gamma"] = r.gamma.to_string();
    row["a"] = r.a.to_string();
    row["b"] = r.b.to_string();
    row["delta"] = r.delta ? nlohmann::json(r.delta->to_string()) : nlohmann::json(nullptr);
    row["H"] = r.H ? nlohmann::json(*r.H) : nlohmann::json(nullptr);
    row["quantity"] = r.quantity;
    row["computed"] = json_number(r.computed);
    row["envelope"] = json_number(r.envelope);
    row["ratio"] = json_number(r.ratio);
    row["pass"] = r.pass;
    doc["rows"].push_back(std::move(row));
  }
  doc["all_pass"] = report.all_pass();
  os << doc.dump(2) << '\n';
}

std::string series_to_json(const ExpSumSeries &series) {
  nlohmann::json doc;
  const Parabola &p = series.inst.parabola();
  doc["alpha"] = p.alpha().to_string();
  doc["beta"] = p.beta().to_string();
  doc["gamma"] = p.gamma().to_string();
  doc["a"] = series.inst.a().to_string();
  doc["b"] = series.inst.b().to_string();
  doc["H"] = series.H;
  doc["phase_mode"] = series.phase_mode == PhaseMode::exact_reduced ? "exact_reduced" : "direct";
  doc["values"] = nlohmann::json::array();
  for (const Complex &v : series.values)
    doc["values"].push_back({v.real(), v.imag()});
  return doc.dump();
}

} // namespace plattice
