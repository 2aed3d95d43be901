#pragma once

// Experiment driver: grids of counting instances, the inequality chain behind
// the floor-sum and near-count bounds checked numerically per cell, extremal
// scans, and CSV/JSON reports. Cells are independent and evaluated by a
// worker pool; rows come back in cell order whatever the pool size.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "plattice/config.hpp"
#include "plattice/counting.hpp"
#include "plattice/divisor_bounds.hpp"
#include "plattice/expsum.hpp"

namespace plattice {

struct BRule {
  enum class Kind { fixed, proportional } kind = Kind::fixed;
  Rat value = 2; ///< b itself, or the factor in b = factor * a
};

struct HRule {
  enum class Kind { paper, fixed, sweep } kind = Kind::paper;
  std::int64_t lo = 1, hi = 1;
};

/// Bounds for seeded random instances: alpha, beta, gamma in
/// [-coeff_bound, coeff_bound] with denominators <= max_den, a in (1, a_max],
/// b in (1, b_max], both with denominators <= max_den.
struct RandomInstanceLimits {
  long coeff_bound = 10;
  long max_den = 100;
  long a_max = 1000;
  long b_max = 10000;
};

/// Deterministic in the engine state.
CountingInstance random_instance(std::mt19937_64 &rng, const RandomInstanceLimits &limits);

struct ExperimentSpec {
  Parabola parabola = Parabola::standard();
  std::vector<Rat> a_grid;
  BRule b_rule;
  std::vector<Rat> delta_grid;
  HRule H_rule;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  std::size_t random_cells = 0;
  RandomInstanceLimits random_limits;
  Admission admission = Admission::strict;
  std::int64_t a_min = 16, a_max = 16;
  std::size_t top_k = 10;
};

/// Throws ConfigError on unknown keys or unparsable values.
ExperimentSpec spec_from_config(const KeyValues &kv);

struct Cell {
  std::string id;
  CountingInstance inst;
};

/// Grid cells (a_grid with b_rule) followed by `random_cells` seeded instances.
std::vector<Cell> build_cells(const ExperimentSpec &spec);

/// H values to test for one instance; H_rule paper yields max(paper_H, 1).
std::vector<std::int64_t> H_values(const ExperimentSpec &spec, const CountingInstance &inst);

struct BoundReport {
  std::string instance_id;
  Rat alpha, beta, gamma, a, b;
  std::optional<Rat> delta;
  std::optional<std::int64_t> H;
  std::string quantity;
  double computed = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<BoundReport> rows;
  /// Max ratio per fitted family, keyed by quantity name.
  std::map<std::string, double> fitted_constants;

  bool all_pass() const;
};

/// Quantities whose envelope hides an unknown constant; their rows are
/// ratio-tested against the fitted constant (max ratio over the run).
inline constexpr const char *fitted_families[] = {"theorem1_envelope", "theorem2_envelope",
                                                  "I_decomposition"};

/// Per cell: |E| against theorem1_envelope, the Vaaler bound, the
/// Cauchy-Schwarz step, the second-moment identity, the second-moment majorant
/// through I, and the decomposition of I; plus trivial_bound when b^2 <= a.
Report run_error_grid(const ExperimentSpec &spec, unsigned workers = 1);
std::vector<BoundReport> error_cell_rows(const Cell &cell, const ExperimentSpec &spec);

/// Per cell and delta: near-count error against the shared envelope, the
/// Erdos-Turan bound on the discrepancy, and Z(N; -delta, delta) = A(a, b, delta);
/// per cell: monotonicity of the near count in delta.
Report run_near_grid(const ExperimentSpec &spec, unsigned workers = 1);
std::vector<BoundReport> near_cell_rows(const Cell &cell, const ExperimentSpec &spec);

struct ExtremalRow {
  std::int64_t a;
  Rat error;                  ///< signed E(a, a) for the standard parabola
  double normalized;          ///< |E| / sqrt(a)
  double chamizo_pastor_floor; ///< chamizo_pastor_floor(a) with the run epsilon
  double chamizo_pastor_ratio; ///< |E| / chamizo_pastor_floor
};

/// Integer a in [a_min, a_max], b = a, y = x^2; sorted by `normalized`
/// descending (ties by a ascending) and truncated to top_k (0 keeps all).
std::vector<ExtremalRow> extremal_search(std::int64_t a_min, std::int64_t a_max,
                                         const ExperimentSpec &spec, unsigned workers = 1);
Report extremal_report(const std::vector<ExtremalRow> &rows);

/// Every intermediate quantity of the floor-sum bound for one instance, in
/// order. H defaults to max(paper_H, 1).
std::vector<std::pair<std::string, std::string>>
prove_chain(const CountingInstance &inst, std::optional<std::int64_t> H, double epsilon);

/// Fills fitted_constants and ratio-tests the fitted families.
void fit_constants(Report &report);

/// 17 significant digits, round-trips through strtod.
std::string format_double(double v);

void write_csv(std::ostream &os, const Report &report);
void write_json(std::ostream &os, const Report &report);
std::string series_to_json(const ExpSumSeries &series);

/// Runs `fn(i)` for i in [0, n) on a pool of `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &fn);

} // namespace plattice
