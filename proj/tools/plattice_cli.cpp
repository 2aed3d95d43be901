// plattice: grid experiments and proof-chain checks for lattice points under
// and near dilated parabolas.
//
// Exit status: 0 when every row passes, 1 when some row fails, 2 on a
// configuration or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "plattice/harness.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> H;
};

int emit(const Options &opt, const plattice::Report &report) {
  std::ofstream file;
  std::ostream *os = &std::cout;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << opt.out << " for writing\n";
      return 2;
    }
    os = &file;
  }
  if (opt.format == "json")
    plattice::write_json(*os, report);
  else
    plattice::write_csv(*os, report);
  return report.all_pass() ? 0 : 1;
}

int emit_chain(const Options &opt,
               const std::vector<std::pair<std::string, std::string>> &entries) {
  std::ofstream file;
  std::ostream *os = &std::cout;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open " << opt.out << " for writing\n";
      return 2;
    }
    os = &file;
  }
  if (opt.format == "json") {
    nlohmann::ordered_json doc;
    for (const auto &[k, v] : entries)
      doc[k] = v;
    *os << doc.dump(2) << '\n';
  } else {
    *os << "key,value\n";
    for (const auto &[k, v] : entries)
      *os << k << ',' << v << '\n';
  }
  for (const auto &[k, v] : entries)
    if (k == "decomposition_exact" && v != "true")
      return 1;
  return 0;
}

plattice::ExperimentSpec load_spec(const Options &opt) {
  plattice::ExperimentSpec spec = plattice::spec_from_config(plattice::load_key_values(opt.config));
  if (opt.seed)
    spec.seed = *opt.seed;
  return spec;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice points under and near dilated parabolas"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", opt.config, "key = value experiment file")->required();
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "override the config seed");
  };

  CLI::App *error_grid = app.add_subcommand("error-grid", "floor-sum error and its proof chain");
  CLI::App *near_grid = app.add_subcommand("near-grid", "near-curve counts and discrepancy");
  CLI::App *extremal = app.add_subcommand("extremal", "largest |E(a, a)| / sqrt(a) for y = x^2");
  CLI::App *chain = app.add_subcommand("prove-chain", "dump every intermediate for the first cell");
  for (CLI::App *cmd : {error_grid, near_grid, extremal, chain})
    add_common(cmd);
  chain->add_option("--H", opt.H, "harmonic cutoff (default: floor(2 sqrt(a) b / (a + b)), at least 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  try {
    const plattice::ExperimentSpec spec = load_spec(opt);
    if (*error_grid)
      return emit(opt, plattice::run_error_grid(spec, opt.threads));
    if (*near_grid) {
      if (spec.delta_grid.empty())
        throw plattice::ConfigError("near-grid needs a non-empty delta list");
      return emit(opt, plattice::run_near_grid(spec, opt.threads));
    }
    if (*extremal) {
      if (spec.a_min < 16 || spec.a_max < spec.a_min)
        throw plattice::ConfigError("extremal needs 16 <= a_min <= a_max");
      return emit(opt, plattice::extremal_report(
                           plattice::extremal_search(spec.a_min, spec.a_max, spec, opt.threads)));
    }
    const auto cells = plattice::build_cells(spec);
    if (cells.empty())
      throw plattice::ConfigError("prove-chain needs at least one cell");
    if (opt.H && *opt.H < 1)
      throw plattice::ConfigError("--H must be positive");
    return emit_chain(opt, plattice::prove_chain(cells.front().inst, opt.H, spec.epsilon));
  } catch (const plattice::ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
