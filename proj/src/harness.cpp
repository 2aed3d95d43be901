#include "plattice/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace plattice {

// ---------------------------------------------------------------------------
// Configuration

namespace {

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos)
      out.push_back(item);
  return out;
}

Rat rat_value(const std::string &key, const std::string &text) {
  try {
    return Rat::parse(text);
  } catch (const std::exception &e) {
    throw ConfigError(key + ": " + e.what());
  }
}

template <class T> T integer_value(const std::string &key, const std::string &text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || text.front() == '-' ||
        v > static_cast<unsigned long long>(std::numeric_limits<T>::max()))
      throw std::invalid_argument("bad");
    return static_cast<T>(v);
  } catch (const std::exception &) {
    throw ConfigError(key + ": expected a non-negative integer, got \"" + text + "\"");
  }
}

double real_value(const std::string &key, const std::string &text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception &) {
    throw ConfigError(key + ": expected a real number, got \"" + text + "\"");
  }
}

bool bool_value(const std::string &key, const std::string &text) {
  if (text == "true" || text == "1" || text == "yes")
    return true;
  if (text == "false" || text == "0" || text == "no")
    return false;
  throw ConfigError(key + ": expected true or false, got \"" + text + "\"");
}

HRule H_rule_value(const std::string &text) {
  HRule r;
  if (text == "paper")
    return r;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    r.kind = HRule::Kind::sweep;
    r.lo = integer_value<std::int64_t>("H", text.substr(0, dots));
    r.hi = integer_value<std::int64_t>("H", text.substr(dots + 2));
    if (r.lo < 1 || r.hi < r.lo)
      throw ConfigError("H: sweep needs 1 <= lo <= hi");
    return r;
  }
  r.kind = HRule::Kind::fixed;
  r.lo = r.hi = integer_value<std::int64_t>("H", text);
  if (r.lo < 1)
    throw ConfigError("H: must be a positive integer");
  return r;
}

} // namespace

ExperimentSpec spec_from_config(const KeyValues &kv) {
  ExperimentSpec spec;
  Rat alpha = 1, beta = 0, gamma = 0;
  bool have_b = false, have_factor = false;
  for (const auto &[key, value] : kv) {
    if (key == "alpha")
      alpha = rat_value(key, value);
    else if (key == "beta")
      beta = rat_value(key, value);
    else if (key == "gamma")
      gamma = rat_value(key, value);
    else if (key == "a")
      for (const auto &item : split_list(value))
        spec.a_grid.push_back(rat_value(key, item));
    else if (key == "b") {
      spec.b_rule = {BRule::Kind::fixed, rat_value(key, value)};
      have_b = true;
    } else if (key == "b_factor") {
      spec.b_rule = {BRule::Kind::proportional, rat_value(key, value)};
      have_factor = true;
    } else if (key == "delta")
      for (const auto &item : split_list(value))
        spec.delta_grid.push_back(rat_value(key, item));
    else if (key == "H")
      spec.H_rule = H_rule_value(value);
    else if (key == "epsilon")
      spec.epsilon = real_value(key, value);
    else if (key == "seed")
      spec.seed = integer_value<std::uint64_t>(key, value);
    else if (key == "random_cells")
      spec.random_cells = integer_value<std::size_t>(key, value);
    else if (key == "random_coeff_bound")
      spec.random_limits.coeff_bound = integer_value<long>(key, value);
    else if (key == "random_max_den")
      spec.random_limits.max_den = integer_value<long>(key, value);
    else if (key == "random_a_max")
      spec.random_limits.a_max = integer_value<long>(key, value);
    else if (key == "random_b_max")
      spec.random_limits.b_max = integer_value<long>(key, value);
    else if (key == "relaxed")
      spec.admission = bool_value(key, value) ? Admission::relaxed : Admission::strict;
    else if (key == "a_min")
      spec.a_min = integer_value<std::int64_t>(key, value);
    else if (key == "a_max")
      spec.a_max = integer_value<std::int64_t>(key, value);
    else if (key == "top_k")
      spec.top_k = integer_value<std::size_t>(key, value);
    else
      throw ConfigError("unknown key \"" + key + "\"");
  }
  if (have_b && have_factor)
    throw ConfigError("b and b_factor are mutually exclusive");
  try {
    spec.parabola = Parabola(alpha, beta, gamma);
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
  if (!(spec.epsilon > 0.0))
    throw ConfigError("epsilon must be positive");
  for (const Rat &d : spec.delta_grid)
    if (d.sign() <= 0 || d >= Rat(1, 2))
      throw ConfigError("delta entries must lie in (0, 1/2), got " + d.to_string());
  if (spec.random_limits.max_den < 1 || spec.random_limits.a_max < 2 ||
      spec.random_limits.b_max < 2 || spec.random_limits.coeff_bound < 1)
    throw ConfigError("random instance limits out of range");
  try {
    (void)build_cells(spec);
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("grid cell rejected: ") + e.what());
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Cells

CountingInstance random_instance(std::mt19937_64 &rng, const RandomInstanceLimits &limits) {
  const auto uniform = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const auto coefficient = [&](bool nonzero) {
    for (;;) {
      const long den = uniform(1, limits.max_den);
      const long num = uniform(-limits.coeff_bound * den, limits.coeff_bound * den);
      if (!nonzero || num != 0)
        return Rat(Integer(num), Integer(den));
    }
  };
  // uniform over num/den in (1, upper] for a random den
  const auto above_one = [&](long upper) {
    const long den = uniform(1, limits.max_den);
    const long num = uniform(den + 1, upper * den);
    return Rat(Integer(num), Integer(den));
  };
  Rat alpha = coefficient(true);
  Rat beta = coefficient(false);
  Rat gamma = coefficient(false);
  Rat a = above_one(limits.a_max);
  Rat b = above_one(limits.b_max);
  return CountingInstance(Parabola(std::move(alpha), std::move(beta), std::move(gamma)),
                          std::move(a), std::move(b));
}

std::vector<Cell> build_cells(const ExperimentSpec &spec) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < spec.a_grid.size(); ++i) {
    const Rat &a = spec.a_grid[i];
    Rat b = spec.b_rule.kind == BRule::Kind::fixed ? spec.b_rule.value : spec.b_rule.value * a;
    cells.push_back({"grid-" + std::to_string(i),
                     CountingInstance(spec.parabola, a, std::move(b), spec.admission)});
  }
  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = 0; i < spec.random_cells; ++i)
    cells.push_back({"rand-" + std::to_string(i), random_instance(rng, spec.random_limits)});
  return cells;
}

std::vector<std::int64_t> H_values(const ExperimentSpec &spec, const CountingInstance &inst) {
  switch (spec.H_rule.kind) {
  case HRule::Kind::paper:
    return {std::max<std::int64_t>(paper_H(inst.a(), inst.b()), 1)};
  case HRule::Kind::fixed:
    return {spec.H_rule.lo};
  case HRule::Kind::sweep:
    break;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t h = spec.H_rule.lo; h <= spec.H_rule.hi; ++h)
    out.push_back(h);
  return out;
}

// ---------------------------------------------------------------------------
// Rows

namespace {

constexpr double inequality_slack = 1e-12;
constexpr double identity_tolerance = 1e-9;

double safe_ratio(double computed, double envelope) {
  if (envelope != 0.0)
    return computed / envelope;
  return computed == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

/// Row factory bound to one cell.
class RowMaker {
public:
  explicit RowMaker(const Cell &cell) : cell_(cell) {}

  BoundReport make(std::string quantity, double computed, double envelope, bool pass,
                   std::optional<std::int64_t> H = std::nullopt,
                   std::optional<Rat> delta = std::nullopt) const {
    const Parabola &p = cell_.inst.parabola();
    BoundReport r{cell_.id,       p.alpha(), p.beta(), p.gamma(),   cell_.inst.a(),
                  cell_.inst.b(), delta,     H,        std::move(quantity)};
    r.computed = computed;
    r.envelope = envelope;
    r.ratio = safe_ratio(computed, envelope);
    r.pass = pass;
    return r;
  }

  /// computed <= envelope up to float slack.
  BoundReport inequality(std::string quantity, double computed, double envelope,
                         std::optional<std::int64_t> H = std::nullopt,
                         std::optional<Rat> delta = std::nullopt) const {
    const bool ok = computed <= envelope * (1.0 + inequality_slack) + inequality_slack;
    return make(std::move(quantity), computed, envelope, ok, H, std::move(delta));
  }

  BoundReport failure(const std::exception &e) const {
    BoundReport r = make("cell_error", std::numeric_limits<double>::quiet_NaN(), 1.0, false);
    std::string what = e.what();
    std::replace(what.begin(), what.end(), ',', ';'); // keep the CSV row intact
    std::replace(what.begin(), what.end(), '\n', ' ');
    r.quantity += ":" + what;
    return r;
  }

private:
  const Cell &cell_;
};

std::int64_t max_of(const std::vector<std::int64_t> &v) { return *std::max_element(v.begin(), v.end()); }

} // namespace

std::vector<BoundReport> error_cell_rows(const Cell &cell, const ExperimentSpec &spec) {
  const RowMaker rows(cell);
  std::vector<BoundReport> out;
  try {
    const CountingInstance &inst = cell.inst;
    const EnvelopeParams params{spec.epsilon, 1.0};
    const ErrorTerm E = error_term(inst);
    const double abs_e = E.abs_value.to_double();
    const double abs_psi = abs(psi_sum(inst)).to_double();
    const std::vector<std::int64_t> Hs = H_values(spec, inst);
    const ExpSumSeries series = exp_sum_series(inst, max_of(Hs));
    const double n = static_cast<double>(inst.x_max());

    out.push_back(rows.make("theorem1_envelope", abs_e, theorem1_envelope(inst, params), true,
                            paper_H(inst.a(), inst.b())));
    if (trivial_regime(inst))
      out.push_back(rows.inequality("trivial_bound", abs_e, n / 2.0));

    for (const std::int64_t H : Hs) {
      out.push_back(rows.inequality("vaaler_lemma", abs_psi, vaaler_bound(series, H), H));
      out.push_back(rows.inequality("cauchy_schwarz", weighted_abs_sum(series, H),
                                    cauchy_schwarz_rhs(series, H), H));
      const double lhs = second_moment_lhs(series, H);
      const Complex weyl = second_moment_weyl_complex(inst, H);
      const bool identity_ok =
          std::abs(weyl.real() - lhs) <= identity_tolerance * std::max(std::abs(lhs), 1.0) &&
          std::abs(weyl.imag()) < identity_tolerance * (1.0 + std::abs(weyl.real()));
      out.push_back(rows.make("second_moment_identity", weyl.real(), lhs, identity_ok, H));
      out.push_back(
          rows.inequality("second_moment_majorant", lhs, second_moment_majorant(inst, H), H));
      const double i_total = I_sum(inst, H);
      out.push_back(
          rows.make("I_decomposition", i_total, I_majorant(inst, H, spec.epsilon), true, H));
    }
  } catch (const std::exception &e) {
    out.push_back(rows.failure(e));
  }
  return out;
}

std::vector<BoundReport> near_cell_rows(const Cell &cell, const ExperimentSpec &spec) {
  const RowMaker rows(cell);
  std::vector<BoundReport> out;
  try {
    const CountingInstance &inst = cell.inst;
    const EnvelopeParams params{spec.epsilon, 1.0};
    const std::vector<std::int64_t> Hs = H_values(spec, inst);
    const ExpSumSeries series = exp_sum_series(inst, max_of(Hs));
    const double envelope = theorem1_envelope(inst, params);

    std::vector<std::pair<Rat, std::int64_t>> counts;
    for (const Rat &delta : spec.delta_grid) {
      const std::int64_t A = near_count(inst, delta);
      counts.emplace_back(delta, A);
      const Rat err = Rat(static_cast<long>(A)) - Rat(2) * delta * inst.b();
      out.push_back(rows.make("theorem2_envelope", abs(err).to_double(), envelope, true,
                              std::nullopt, delta));

      const DiscrepancyWindow window = DiscrepancyWindow::symmetric(delta);
      const std::int64_t Z = window_count(inst, window);
      out.push_back(rows.make("window_count_identity", std::abs(static_cast<double>(Z - A)), 1.0,
                              Z == A, std::nullopt, delta));
      const double disc = std::abs(discrepancy(inst, window));
      for (const std::int64_t H : Hs)
        out.push_back(
            rows.inequality("erdos_turan_lemma", disc, erdos_turan_bound(series, H), H, delta));
    }
    std::sort(counts.begin(), counts.end(),
              [](const auto &l, const auto &r) { return l.first < r.first; });
    int violations = 0;
    for (std::size_t i = 1; i < counts.size(); ++i)
      violations += counts[i].second < counts[i - 1].second;
    out.push_back(rows.make("delta_monotonicity", violations, 1.0, violations == 0));
  } catch (const std::exception &e) {
    out.push_back(rows.failure(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runs

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn) {
  const std::size_t pool = std::min<std::size_t>(n, workers == 0 ? 1 : workers);
  if (pool <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!first_error)
            first_error = std::current_exception();
        }
      }
    });
  for (auto &t : threads)
    t.join();
  if (first_error)
    std::rethrow_exception(first_error);
}

namespace {

template <class CellRows>
Report run_cells(const ExperimentSpec &spec, unsigned workers, CellRows cell_rows) {
  const std::vector<Cell> cells = build_cells(spec);
  std::vector<std::vector<BoundReport>> per_cell(cells.size());
  parallel_for(cells.size(), workers,
               [&](std::size_t i) { per_cell[i] = cell_rows(cells[i], spec); });
  Report report;
  for (auto &rows : per_cell)
    for (auto &r : rows)
      report.rows.push_back(std::move(r));
  fit_constants(report);
  return report;
}

} // namespace

Report run_error_grid(const ExperimentSpec &spec, unsigned workers) {
  return run_cells(spec, workers, error_cell_rows);
}

Report run_near_grid(const ExperimentSpec &spec, unsigned workers) {
  return run_cells(spec, workers, near_cell_rows);
}

bool Report::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundReport &r) { return r.pass; });
}

void fit_constants(Report &report) {
  report.fitted_constants.clear();
  for (const char *family : fitted_families) {
    double c = 0.0;
    bool seen = false;
    for (const BoundReport &r : report.rows)
      if (r.quantity == family && std::isfinite(r.ratio)) {
        c = seen ? std::max(c, r.ratio) : r.ratio;
        seen = true;
      }
    if (!seen)
      continue;
    report.fitted_constants[family] = c;
    for (BoundReport &r : report.rows)
      if (r.quantity == family)
        r.pass = std::isfinite(r.ratio) && r.ratio <= c;
  }
}

// ---------------------------------------------------------------------------
// Extremal search

std::vector<ExtremalRow> extremal_search(std::int64_t a_min, std::int64_t a_max,
                                         const ExperimentSpec &spec, unsigned workers) {
  if (a_min < 16 || a_max < a_min)
    throw std::invalid_argument("extremal_search needs 16 <= a_min <= a_max");
  const EnvelopeParams params{spec.epsilon, 1.0};
  std::vector<ExtremalRow> rows(static_cast<std::size_t>(a_max - a_min + 1));
  parallel_for(rows.size(), workers, [&](std::size_t i) {
    const std::int64_t a = a_min + static_cast<std::int64_t>(i);
    const Rat ra(static_cast<long>(a));
    const CountingInstance inst(Parabola::standard(), ra, ra);
    ErrorTerm E = error_term(inst);
    const double magnitude = E.abs_value.to_double();
    const double ad = static_cast<double>(a);
    const double floor_cp = chamizo_pastor_floor(ad, params);
    rows[i] = {a, std::move(E.signed_value), magnitude / std::sqrt(ad), floor_cp,
               magnitude / floor_cp};
  });
  std::stable_sort(rows.begin(), rows.end(), [](const ExtremalRow &l, const ExtremalRow &r) {
    return l.normalized > r.normalized;
  });
  if (spec.top_k != 0 && rows.size() > spec.top_k)
    rows.resize(spec.top_k);
  return rows;
}

Report extremal_report(const std::vector<ExtremalRow> &rows) {
  Report report;
  const Parabola p = Parabola::standard();
  for (const ExtremalRow &row : rows) {
    const Rat a(static_cast<long>(row.a));
    const double magnitude = abs(row.error).to_double();
    const double ad = static_cast<double>(row.a);
    const Cell cell{"a-" + std::to_string(row.a), CountingInstance(p, a, a)};
    const RowMaker maker(cell);
    report.rows.push_back(maker.make("normalized_error", magnitude, std::sqrt(ad), true));
    report.rows.push_back(
        maker.make("chamizo_pastor_ratio", magnitude, row.chamizo_pastor_floor, true));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Single-cell dump

std::vector<std::pair<std::string, std::string>>
prove_chain(const CountingInstance &inst, std::optional<std::int64_t> H_opt, double epsilon) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto put = [&](std::string k, std::string v) { out.emplace_back(std::move(k), std::move(v)); };
  const auto num = [](double v) { return format_double(v); };

  const Parabola &p = inst.parabola();
  const ProofParameters pp = proof_parameters(inst);
  const std::int64_t H = H_opt.value_or(std::max<std::int64_t>(pp.H, 1));
  const EnvelopeParams params{epsilon, 1.0};

  put("alpha", p.alpha().to_string());
  put("beta", p.beta().to_string());
  put("gamma", p.gamma().to_string());
  put("a", inst.a().to_string());
  put("b", inst.b().to_string());
  put("x_max", std::to_string(inst.x_max()));
  put("q", pp.q.to_string());
  put("H_paper", std::to_string(pp.H));
  put("H", std::to_string(H));
  put("Delta", num(pp.Delta));
  put("trivial_regime", trivial_regime(inst) ? "true" : "false");

  const Integer fs = floor_sum(inst);
  const Rat mt = main_term(inst);
  const Rat ps = psi_sum(inst);
  const ErrorTerm E = error_term(inst);
  put("floor_sum", fs.get_str());
  put("main_term", mt.to_string());
  put("psi_sum", ps.to_string());
  put("E_signed", E.signed_value.to_string());
  put("E_abs", E.abs_value.to_string());
  put("decomposition_exact", Rat(fs) == mt + E.signed_value && E.signed_value == -ps ? "true" : "false");

  const ExpSumSeries series = exp_sum_series(inst, H);
  for (std::int64_t h = 1; h <= H; ++h) {
    put("S(" + std::to_string(h) + ").re", num(series.at(h).real()));
    put("S(" + std::to_string(h) + ").im", num(series.at(h).imag()));
  }
  put("vaaler_bound", num(vaaler_bound(series, H)));
  put("weighted_abs_sum", num(weighted_abs_sum(series, H)));
  put("harmonic_H", num(harmonic(H)));
  const double lhs = second_moment_lhs(series, H);
  put("second_moment_lhs", num(lhs));
  const Complex weyl = second_moment_weyl_complex(inst, H);
  put("second_moment_weyl", num(weyl.real()));
  put("second_moment_weyl_imag", num(weyl.imag()));
  put("cauchy_schwarz_rhs", num(cauchy_schwarz_rhs(series, H)));
  put("shift_double_sum", num(shift_double_sum(inst, H)));
  put("shift_double_sum_grouped", num(shift_double_sum_grouped(inst, H)));
  put("second_moment_majorant", num(second_moment_majorant(inst, H)));
  put("I", num(I_sum(inst, H)));
  put("I1", num(I1_sum(inst)));
  put("I2", num(I2_sum(inst, H)));
  put("I_majorant", num(I_majorant(inst, H, epsilon)));
  const double env = theorem1_envelope(inst, params);
  put("theorem1_envelope", num(env));
  put("E_over_envelope", num(E.abs_value.to_double() / env));
  return out;
}

} // namespace plattice
