#pragma once

// Exact rationals over GMP plus the mod-1 primitives used by every counting
// and exponential-sum routine.
//
// Real parameters (a, b, alpha, beta, gamma, delta) are always supplied as
// rationals. An irrational parameter must be approximated by the caller; all
// quantities computed downstream are then exact for that approximant.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace plattice {

using Integer = mpz_class;

/// Rational number kept in canonical form: den > 0 and gcd(|num|, den) = 1.
class Rat {
public:
  Rat() = default;
  Rat(int v) : q_(static_cast<long>(v)) {}
  Rat(long v) : q_(v) {}
  Rat(const Integer &v) : q_(v) {}
  /// Throws std::invalid_argument when den == 0.
  Rat(const Integer &num, const Integer &den);

  /// Accepts "num/den", plain integers and decimal literals ("-0.25", "1e-3").
  static Rat parse(std::string_view text);

  const Integer &num() const { return q_.get_num(); }
  const Integer &den() const { return q_.get_den(); }

  bool is_integer() const { return den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// "num/den", with "/den" omitted when den == 1.
  std::string to_string() const;

  Rat &operator+=(const Rat &o);
  Rat &operator-=(const Rat &o);
  Rat &operator*=(const Rat &o);
  /// Throws std::domain_error on division by zero.
  Rat &operator/=(const Rat &o);

  friend Rat operator+(Rat l, const Rat &r) { return l += r; }
  friend Rat operator-(Rat l, const Rat &r) { return l -= r; }
  friend Rat operator*(Rat l, const Rat &r) { return l *= r; }
  friend Rat operator/(Rat l, const Rat &r) { return l /= r; }
  Rat operator-() const;

  friend bool operator==(const Rat &l, const Rat &r) { return cmp(l.q_, r.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat &l, const Rat &r) {
    const int c = cmp(l.q_, r.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class &gmp() const { return q_; }

private:
  mpq_class q_;
};

std::ostream &operator<<(std::ostream &os, const Rat &x);

Rat abs(const Rat &x);

/// The unique integer n with n <= x < n + 1.
Integer floor(const Rat &x);
/// The unique integer n with n - 1 < x <= n.
Integer ceil(const Rat &x);
/// x - floor(x), in [0, 1).
Rat frac(const Rat &x);
/// frac(x) - 1/2, in [-1/2, 1/2).
Rat psi(const Rat &x);
/// min over integers n of |x - n|, in [0, 1/2].
Rat dist_nearest_int(const Rat &x);

/// Narrowing with range check; throws std::overflow_error.
std::int64_t to_int64(const Integer &v);
/// v / d as a double to within a few ulp, for operands beyond double range.
double ratio_to_double(const Integer &v, const Integer &d);

} // namespace plattice
