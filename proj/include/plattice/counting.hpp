#pragma once

// Lattice points under and near the dilated parabola
//
//   aP : y = alpha x^2 / a + beta x + gamma a,     1 <= x <= b.
//
// x runs over the integers 1..floor(b). All counts are evaluated by exact
// definitional summation; every sum is block-decomposable over x so that
// contiguous blocks can be evaluated concurrently and combined by exact
// addition with bit-identical results.

#include <cstdint>
#include <utility>
#include <vector>

#include "plattice/rat.hpp"

namespace plattice {

/// y = alpha x^2 + beta x + gamma with alpha != 0.
class Parabola {
public:
  /// Throws std::invalid_argument when alpha == 0.
  Parabola(Rat alpha, Rat beta, Rat gamma);

  /// The standard parabola y = x^2.
  static Parabola standard() { return Parabola(1, 0, 0); }

  const Rat &alpha() const { return alpha_; }
  const Rat &beta() const { return beta_; }
  const Rat &gamma() const { return gamma_; }

  /// (alpha, beta, gamma) -> (-alpha, -beta, -gamma).
  Parabola negated() const { return Parabola(-alpha_, -beta_, -gamma_); }

  friend bool operator==(const Parabola &, const Parabola &) = default;

private:
  Rat alpha_, beta_, gamma_;
};

/// f(x) = (A x^2 + B x + C) / D with D > 0, all integers.
struct IntegerForm {
  Integer A, B, C, D;

  /// Numerator A x^2 + B x + C.
  Integer numerator(std::int64_t x) const;
};

enum class Admission {
  strict,  ///< a > 1 and b > 1
  relaxed, ///< a > 0 and b >= 1, for degenerate oracle cases such as a = 1
};

/// One experiment cell: a parabola dilated by a, summed over 1 <= x <= b.
class CountingInstance {
public:
  /// Throws std::invalid_argument when a or b violate the admission rule.
  CountingInstance(Parabola parabola, Rat a, Rat b, Admission admission = Admission::strict);

  static CountingInstance relaxed(Parabola parabola, Rat a, Rat b) {
    return CountingInstance(std::move(parabola), std::move(a), std::move(b), Admission::relaxed);
  }

  const Parabola &parabola() const { return parabola_; }
  const Rat &a() const { return a_; }
  const Rat &b() const { return b_; }
  /// floor(b).
  std::int64_t x_max() const { return x_max_; }
  /// max(b^2 sqrt(a) / (a + b), 3).
  double delta_cap() const { return delta_cap_; }
  /// alpha / a, beta, gamma a over a common denominator.
  const IntegerForm &form() const { return form_; }
  Admission admission() const { return admission_; }

  /// Same a, b and admission with another parabola.
  CountingInstance with_parabola(Parabola p) const {
    return CountingInstance(std::move(p), a_, b_, admission_);
  }

private:
  Parabola parabola_;
  Rat a_, b_;
  Admission admission_;
  std::int64_t x_max_;
  double delta_cap_;
  IntegerForm form_;
};

/// Signed and absolute forms of the floor-sum error E_P(a, b).
struct ErrorTerm {
  Rat signed_value; ///< floor_sum - main_term
  Rat abs_value;    ///< |signed_value|
};

/// alpha x^2 / a + beta x + gamma a. Throws std::out_of_range unless 1 <= x <= x_max.
Rat f_value(const CountingInstance &inst, std::int64_t x);

/// sum_{x=lo}^{hi} floor(f(x)); requires 1 <= lo, hi <= x_max (empty when lo > hi).
Integer floor_sum_block(const CountingInstance &inst, std::int64_t lo, std::int64_t hi);
/// sum_{x=lo}^{hi} psi(f(x)).
Rat psi_sum_block(const CountingInstance &inst, std::int64_t lo, std::int64_t hi);
/// #{lo <= x <= hi : ||f(x)|| < delta}.
std::int64_t near_count_block(const CountingInstance &inst, const Rat &delta, std::int64_t lo,
                              std::int64_t hi);

/// sum_{1 <= x <= b} floor(f(x)); `workers` > 1 splits 1..x_max into contiguous blocks.
Integer floor_sum(const CountingInstance &inst, unsigned workers = 1);

/// sum_{1 <= x <= b} (f(x) - 1/2) from closed-form power sums.
Rat main_term(const CountingInstance &inst);

/// Signed sum_{1 <= x <= b} psi(f(x)).
Rat psi_sum(const CountingInstance &inst, unsigned workers = 1);

ErrorTerm error_term(const CountingInstance &inst, unsigned workers = 1);

/// A_P(a, b, delta): #{1 <= x <= b : ||f(x)|| < delta}, strict inequality.
/// Throws std::invalid_argument unless 0 < delta < 1/2.
std::int64_t near_count(const CountingInstance &inst, const Rat &delta, unsigned workers = 1);

/// near_count - 2 delta b, with the real b.
Rat near_count_error(const CountingInstance &inst, const Rat &delta);
/// near_count - 2 delta floor(b).
Rat near_count_error_floor_b(const CountingInstance &inst, const Rat &delta);

/// Splits [1, n] into at most `parts` contiguous non-empty blocks.
std::vector<std::pair<std::int64_t, std::int64_t>> split_range(std::int64_t n, unsigned parts);

} // namespace plattice
