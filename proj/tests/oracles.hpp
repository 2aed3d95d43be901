#pragma once

// Brute-force definitional oracles. They rebuild every quantity from the
// parabola coefficients with plain rational arithmetic (or quadruple
// precision for exponentials) and never touch the library's integer-form
// residue kernels.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include <quadmath.h>

#include "plattice/counting.hpp"

namespace oracle {

using plattice::Integer;
using plattice::Rat;

inline Rat f(const plattice::CountingInstance &inst, std::int64_t x) {
  const auto &p = inst.parabola();
  const Rat rx(static_cast<long>(x));
  return p.alpha() * rx * rx / inst.a() + p.beta() * rx + p.gamma() * inst.a();
}

inline Integer floor_of(const Rat &t) {
  Integer q = t.num() / t.den(); // truncates toward zero
  if (t.sign() < 0 && Rat(q) != t)
    q -= 1;
  return q;
}

inline Rat frac_of(const Rat &t) { return t - Rat(floor_of(t)); }

inline Rat dist_of(const Rat &t) {
  const Rat u = frac_of(t);
  return u < Rat(1) - u ? u : Rat(1) - u;
}

inline Integer floor_sum(const plattice::CountingInstance &inst) {
  Integer s = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x)
    s += floor_of(f(inst, x));
  return s;
}

inline Rat main_term(const plattice::CountingInstance &inst) {
  Rat s = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x)
    s += f(inst, x) - Rat(1, 2);
  return s;
}

inline Rat psi_sum(const plattice::CountingInstance &inst) {
  Rat s = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x)
    s += frac_of(f(inst, x)) - Rat(1, 2);
  return s;
}

inline std::int64_t near_count(const plattice::CountingInstance &inst, const Rat &delta) {
  std::int64_t c = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x)
    c += dist_of(f(inst, x)) < delta;
  return c;
}

/// #{x : f(x) + k in (xi, eta) for some integer k}.
inline std::int64_t window_count(const plattice::CountingInstance &inst, const Rat &xi,
                                 const Rat &eta) {
  std::int64_t c = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x) {
    const Rat u = f(inst, x);
    // the only candidate shift is the smallest k with u + k > xi
    const Rat k = Rat(floor_of(xi - u)) + Rat(1);
    const Rat v = u + k;
    c += xi < v && v < eta;
  }
  return c;
}

inline __float128 to_quad(const Rat &r) {
  // exact integer parts converted through strings keep all quad digits
  const __float128 n = strtoflt128(r.num().get_str().c_str(), nullptr);
  const __float128 d = strtoflt128(r.den().get_str().c_str(), nullptr);
  return n / d;
}

/// S(h) with h f(x) evaluated in quadruple precision from the coefficients.
inline std::complex<double> exp_sum_quad(const plattice::CountingInstance &inst, std::int64_t h) {
  const auto &p = inst.parabola();
  const __float128 c2 = to_quad(p.alpha() / inst.a());
  const __float128 c1 = to_quad(p.beta());
  const __float128 c0 = to_quad(p.gamma() * inst.a());
  const __float128 two_pi = 2 * M_PIq;
  __float128 re = 0, im = 0;
  for (std::int64_t x = 1; x <= inst.x_max(); ++x) {
    const __float128 xq = x;
    __float128 phase = static_cast<__float128>(h) * (c2 * xq * xq + c1 * xq + c0);
    phase -= floorq(phase);
    re += cosq(two_pi * phase);
    im += sinq(two_pi * phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// |S(h)|^2 from the O(N^2) double sum over (x, x').
inline double abs_square_pairs(const plattice::CountingInstance &inst, std::int64_t h) {
  const auto n = inst.x_max();
  double s = 0;
  for (std::int64_t x = 1; x <= n; ++x)
    for (std::int64_t y = 1; y <= n; ++y) {
      const Rat d = Rat(static_cast<long>(h)) * (f(inst, x) - f(inst, y));
      s += std::cos(2 * std::numbers::pi * frac_of(d).to_double());
    }
  return s;
}

/// sum_{y=1}^{n} e(theta y) by direct quad summation.
inline std::complex<double> geometric_direct(const Rat &theta, std::int64_t n) {
  __float128 re = 0, im = 0;
  for (std::int64_t y = 1; y <= n; ++y) {
    const Rat t = frac_of(theta * Rat(static_cast<long>(y)));
    const __float128 ph = 2 * M_PIq * to_quad(t);
    re += cosq(ph);
    im += sinq(ph);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

inline std::uint64_t sigma(std::uint64_t j) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= j; ++d)
    if (j % d == 0)
      s += d;
  return s;
}

inline std::uint64_t divisor_count(std::uint64_t j) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= j; ++d)
    s += j % d == 0;
  return s;
}

/// min(2b, ||2 alpha j / a||^{-1}) with the min taken in rationals.
inline double weight(const plattice::CountingInstance &inst, std::int64_t j) {
  const Rat two_b = Rat(2) * inst.b();
  const Rat d = dist_of(Rat(2) * inst.parabola().alpha() * Rat(static_cast<long>(j)) / inst.a());
  if (d.sign() == 0)
    return two_b.to_double();
  const Rat inv = Rat(1) / d;
  return (inv < two_b ? inv : two_b).to_double();
}

/// I by the definition: divisors < b found by trial over 1..j.
inline double I_sum(const plattice::CountingInstance &inst, std::int64_t H) {
  const Rat limit = inst.b() * Rat(static_cast<long>(H));
  double s = 0;
  for (std::int64_t j = 1; Rat(static_cast<long>(j)) < limit; ++j) {
    std::uint64_t g = 0;
    for (std::int64_t h = 1; h <= j; ++h)
      if (j % h == 0 && Rat(static_cast<long>(h)) < inst.b())
        g += static_cast<std::uint64_t>(h);
    s += weight(inst, j) * static_cast<double>(g) / static_cast<double>(j);
  }
  return s;
}

/// Random rational num/den with |value| <= bound, den <= max_den.
inline Rat random_rat(std::mt19937_64 &rng, long bound, long max_den) {
  const long den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
  const long span = 2 * bound * den + 1;
  const long num = static_cast<long>(rng() % static_cast<std::uint64_t>(span)) - bound * den;
  return Rat(Integer(num), Integer(den));
}

/// Small random instance: a in (1, a_max], b in (1, b_max].
inline plattice::CountingInstance random_small(std::mt19937_64 &rng, long a_max, long b_max,
                                               long coeff = 10, long max_den = 30) {
  Rat alpha = 0;
  while (alpha.sign() == 0)
    alpha = random_rat(rng, coeff, max_den);
  const Rat beta = random_rat(rng, coeff, max_den);
  const Rat gamma = random_rat(rng, coeff, max_den);
  const auto above_one = [&](long upper) {
    const long den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
    const long num =
        den + 1 + static_cast<long>(rng() % static_cast<std::uint64_t>((upper - 1) * den));
    return Rat(Integer(num), Integer(den));
  };
  const Rat a = above_one(a_max);
  const Rat b = above_one(b_max);
  return plattice::CountingInstance(plattice::Parabola(alpha, beta, gamma), a, b);
}

} // namespace oracle
