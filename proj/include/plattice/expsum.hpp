#pragma once

// Quadratic exponential sums S(h) = sum_{1 <= x <= b} e(h f(x)), the two
// Fourier-analytic bounds built from them (Vaaler's psi-sum bound and the
// Erdos-Turan discrepancy bound), the discrepancy itself, and the
// Weyl-differenced second moment.
//
// Phases are reduced mod 1 in exact arithmetic before the one transcendental
// evaluation per term, so S(h) stays accurate when h f(x) is far beyond 2^53.

#include <complex>
#include <cstdint>
#include <vector>

#include "plattice/counting.hpp"

namespace plattice {

using Complex = std::complex<double>;

enum class PhaseMode {
  exact_reduced, ///< h f(x) mod 1 computed exactly, then one sin/cos
  direct,        ///< h f(x) evaluated in double; kept to demonstrate the failure
};

/// S(1..H) for one instance. values[h - 1] holds S(h).
struct ExpSumSeries {
  CountingInstance inst;
  std::int64_t H;
  std::vector<Complex> values;
  PhaseMode phase_mode;

  const Complex &at(std::int64_t h) const { return values.at(static_cast<std::size_t>(h - 1)); }
};

/// Open window (xi, eta) mod 1; requires xi < eta < xi + 1.
class DiscrepancyWindow {
public:
  /// Throws std::invalid_argument when the window is empty or wraps past a full period.
  DiscrepancyWindow(Rat xi, Rat eta);

  /// (-delta, delta).
  static DiscrepancyWindow symmetric(const Rat &delta) { return DiscrepancyWindow(-delta, delta); }

  const Rat &xi() const { return xi_; }
  const Rat &eta() const { return eta_; }
  Rat width() const { return eta_ - xi_; }

private:
  Rat xi_, eta_;
};

/// e(t) = exp(2 pi i t), with t reduced mod 1 exactly.
Complex unit_phase(const Rat &t);

/// sin(pi t), with t reduced mod 2 exactly.
double sin_pi(const Rat &t);

/// S(h). Throws std::invalid_argument when h < 1.
Complex exp_sum(const CountingInstance &inst, std::int64_t h,
                PhaseMode mode = PhaseMode::exact_reduced);

/// S(1..H) restricted to lo <= x <= hi.
std::vector<Complex> exp_sum_series_block(const CountingInstance &inst, std::int64_t H,
                                          std::int64_t lo, std::int64_t hi,
                                          PhaseMode mode = PhaseMode::exact_reduced);

/// S(1..H); blocks over x are evaluated concurrently when workers > 1.
ExpSumSeries exp_sum_series(const CountingInstance &inst, std::int64_t H,
                            PhaseMode mode = PhaseMode::exact_reduced, unsigned workers = 1);

/// b / (2H + 2) + (1 + 1/pi) sum_{h <= H} |S(h)| / h, with b taken as floor(b).
double vaaler_bound(const ExpSumSeries &series, std::int64_t H);
double vaaler_bound(const CountingInstance &inst, std::int64_t H);

/// N / (H + 1) + 3 sum_{h <= H} |S(h)| / h with N = floor(b).
double erdos_turan_bound(const ExpSumSeries &series, std::int64_t H);
double erdos_turan_bound(const CountingInstance &inst, std::int64_t H);

/// Z(N; xi, eta) = #{1 <= x <= b : f(x) in (xi, eta) mod 1}, decided exactly.
std::int64_t window_count(const CountingInstance &inst, const DiscrepancyWindow &window);

/// D(N; xi, eta) = Z - (eta - xi) N, exact.
Rat discrepancy_exact(const CountingInstance &inst, const DiscrepancyWindow &window);
double discrepancy(const CountingInstance &inst, const DiscrepancyWindow &window);

/// sum_{h <= H} |S(h)| / h.
double weighted_abs_sum(const ExpSumSeries &series, std::int64_t H);

/// sum_{h <= H} |S(h)|^2 / h.
double second_moment_lhs(const ExpSumSeries &series, std::int64_t H);
double second_moment_lhs(const CountingInstance &inst, std::int64_t H);

/// Real and imaginary parts of the Weyl-differenced form
///   sum_{h <= H} (1/h) sum_{|l| < N} e(h(alpha l^2 / a + beta l))
///                      sum_{1 <= y, y + l <= N} e(2 alpha h l y / a).
Complex second_moment_weyl_complex(const CountingInstance &inst, std::int64_t H);
/// Rational-arithmetic evaluation of the same sum, independent of the
/// residue kernel used by second_moment_weyl_complex for small denominators.
Complex second_moment_weyl_rational(const CountingInstance &inst, std::int64_t H);
/// Real part of the above; throws std::runtime_error when the imaginary
/// residual exceeds 1e-9 (1 + |result|).
double second_moment_weyl(const CountingInstance &inst, std::int64_t H);

/// sum_{y=1}^{n} e(theta y); exactly n when theta is an integer.
/// Throws std::invalid_argument when n < 1.
Complex geometric_inner_sum(const Rat &theta, std::int64_t n);

/// sqrt(sum_{h <= H} 1/h) sqrt(second moment): the right side of the
/// Cauchy-Schwarz step bounding weighted_abs_sum.
double cauchy_schwarz_rhs(const ExpSumSeries &series, std::int64_t H);

/// sum_{h <= H} 1/h.
double harmonic(std::int64_t H);

} // namespace plattice
