#include "plattice/expsum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "residues.hpp"

namespace plattice {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Complex phase_from_fraction(double t) { return {std::cos(two_pi * t), std::sin(two_pi * t)}; }

/// p / d mapped to (-1/2, 1/2] for 0 <= p < d < 2^62.
double centered(std::uint64_t p, std::uint64_t d) {
  const double v = 2 * p > d ? -static_cast<double>(d - p) : static_cast<double>(p);
  return v / static_cast<double>(d);
}

double centered(const Integer &p, const Integer &d) {
  if (2 * p > d)
    return -ratio_to_double(Integer(d - p), d);
  return ratio_to_double(p, d);
}

void check_H(std::int64_t H) {
  if (H < 1)
    throw std::invalid_argument("H must be a positive integer, got " + std::to_string(H));
}

void check_series(const ExpSumSeries &series, std::int64_t H) {
  check_H(H);
  if (H > series.H)
    throw std::out_of_range("series holds S(1.." + std::to_string(series.H) + "), need H = " +
                            std::to_string(H));
}

struct DirectCoefficients {
  double c2, c1, c0;
  explicit DirectCoefficients(const CountingInstance &inst)
      : c2((inst.parabola().alpha() / inst.a()).to_double()),
        c1(inst.parabola().beta().to_double()),
        c0((inst.parabola().gamma() * inst.a()).to_double()) {}
  double at(std::int64_t x) const {
    const double xd = static_cast<double>(x);
    return c2 * xd * xd + c1 * xd + c0;
  }
};

} // namespace

DiscrepancyWindow::DiscrepancyWindow(Rat xi, Rat eta) : xi_(std::move(xi)), eta_(std::move(eta)) {
  if (!(xi_ < eta_ && eta_ < xi_ + Rat(1)))
    throw std::invalid_argument("window needs xi < eta < xi + 1, got (" + xi_.to_string() + ", " +
                                eta_.to_string() + ")");
}

Complex unit_phase(const Rat &t) {
  Rat f = frac(t);
  if (f > Rat(1, 2))
    f -= Rat(1);
  return phase_from_fraction(f.to_double());
}

double sin_pi(const Rat &t) {
  Rat r = t - Rat(2) * Rat(floor(t / Rat(2)));
  double sign = 1.0;
  if (r >= Rat(1)) {
    r -= Rat(1);
    sign = -1.0;
  }
  const Rat other = Rat(1) - r;
  const Rat &s = r <= other ? r : other;
  return sign * std::sin(std::numbers::pi * s.to_double());
}

Complex exp_sum(const CountingInstance &inst, std::int64_t h, PhaseMode mode) {
  check_H(h);
  const std::int64_t n = inst.x_max();
  Complex total = 0.0;
  if (mode == PhaseMode::direct) {
    const DirectCoefficients c(inst);
    for (std::int64_t x = 1; x <= n; ++x)
      total += phase_from_fraction(static_cast<double>(h) * c.at(x));
    return total;
  }
  const IntegerForm &f = inst.form();
  if (detail::small_modulus(f.D)) {
    detail::SmallResidueWalker w(f, 1);
    const std::uint64_t d = w.modulus();
    const std::uint64_t hm = static_cast<std::uint64_t>(h) % d;
    for (std::int64_t x = 1; x <= n; ++x, w.advance()) {
      const auto p = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(w.value()) * hm % d);
      total += phase_from_fraction(centered(p, d));
    }
  } else {
    detail::BigResidueWalker w(f, 1);
    Integer p;
    for (std::int64_t x = 1; x <= n; ++x, w.advance()) {
      p = w.value() * h;
      mpz_fdiv_r(p.get_mpz_t(), p.get_mpz_t(), f.D.get_mpz_t());
      total += phase_from_fraction(centered(p, f.D));
    }
  }
  return total;
}

std::vector<Complex> exp_sum_series_block(const CountingInstance &inst, std::int64_t H,
                                          std::int64_t lo, std::int64_t hi, PhaseMode mode) {
  check_H(H);
  if (lo < 1 || hi > inst.x_max())
    throw std::out_of_range("block outside 1..x_max");
  std::vector<Complex> values(static_cast<std::size_t>(H), Complex(0.0));
  if (lo > hi)
    return values;

  if (mode == PhaseMode::direct) {
    const DirectCoefficients c(inst);
    for (std::int64_t x = lo; x <= hi; ++x) {
      const double fx = c.at(x);
      for (std::int64_t h = 1; h <= H; ++h)
        values[h - 1] += phase_from_fraction(static_cast<double>(h) * fx);
    }
    return values;
  }

  const IntegerForm &f = inst.form();
  if (detail::small_modulus(f.D)) {
    detail::SmallResidueWalker w(f, lo);
    const std::uint64_t d = w.modulus();
    for (std::int64_t x = lo; x <= hi; ++x, w.advance()) {
      const std::uint64_t r = w.value();
      std::uint64_t p = 0;
      for (std::int64_t h = 1; h <= H; ++h) {
        p = detail::add_mod(p, r, d);
        values[h - 1] += phase_from_fraction(centered(p, d));
      }
    }
  } else {
    detail::BigResidueWalker w(f, lo);
    Integer p;
    for (std::int64_t x = lo; x <= hi; ++x, w.advance()) {
      p = 0;
      for (std::int64_t h = 1; h <= H; ++h) {
        p += w.value();
        if (p >= f.D)
          p -= f.D;
        values[h - 1] += phase_from_fraction(centered(p, f.D));
      }
    }
  }
  return values;
}

namespace {

struct ComplexVector {
  std::vector<Complex> v;
  ComplexVector &operator+=(const ComplexVector &o) {
    if (v.empty())
      v = o.v;
    else
      for (std::size_t i = 0; i < v.size(); ++i)
        v[i] += o.v[i];
    return *this;
  }
};

} // namespace

ExpSumSeries exp_sum_series(const CountingInstance &inst, std::int64_t H, PhaseMode mode,
                            unsigned workers) {
  check_H(H);
  ComplexVector sum = detail::sum_over_blocks(
      inst.x_max(), workers, ComplexVector{}, [&](std::int64_t lo, std::int64_t hi) {
        return ComplexVector{exp_sum_series_block(inst, H, lo, hi, mode)};
      });
  if (sum.v.empty())
    sum.v.assign(static_cast<std::size_t>(H), Complex(0.0));
  return ExpSumSeries{inst, H, std::move(sum.v), mode};
}

double harmonic(std::int64_t H) {
  double s = 0.0;
  for (std::int64_t h = 1; h <= H; ++h)
    s += 1.0 / static_cast<double>(h);
  return s;
}

double weighted_abs_sum(const ExpSumSeries &series, std::int64_t H) {
  check_series(series, H);
  double s = 0.0;
  for (std::int64_t h = 1; h <= H; ++h)
    s += std::abs(series.at(h)) / static_cast<double>(h);
  return s;
}

double vaaler_bound(const ExpSumSeries &series, std::int64_t H) {
  const double n = static_cast<double>(series.inst.x_max());
  return n / static_cast<double>(2 * H + 2) +
         (1.0 + 1.0 / std::numbers::pi) * weighted_abs_sum(series, H);
}

double vaaler_bound(const CountingInstance &inst, std::int64_t H) {
  return vaaler_bound(exp_sum_series(inst, H), H);
}

double erdos_turan_bound(const ExpSumSeries &series, std::int64_t H) {
  const double n = static_cast<double>(series.inst.x_max());
  return n / static_cast<double>(H + 1) + 3.0 * weighted_abs_sum(series, H);
}

double erdos_turan_bound(const CountingInstance &inst, std::int64_t H) {
  return erdos_turan_bound(exp_sum_series(inst, H), H);
}

std::int64_t window_count(const CountingInstance &inst, const DiscrepancyWindow &window) {
  // With xi' = frac(xi), eta' = xi' + width and u = r / D in [0, 1):
  // u lies in the window mod 1 iff xi' < u < eta' or u + 1 < eta'.
  const IntegerForm &f = inst.form();
  const Rat D(f.D);
  const Rat xi0 = frac(window.xi());
  const Rat eta0 = xi0 + window.width();
  const Integer lo1 = floor(xi0 * D) + 1;
  const Integer hi1 = ceil(eta0 * D);
  Integer hi2 = ceil((eta0 - Rat(1)) * D);
  if (hi2 < 0)
    hi2 = 0;

  const std::int64_t n = inst.x_max();
  std::int64_t count = 0;
  if (detail::small_modulus(f.D)) {
    const std::uint64_t l1 = mpz_get_ui(lo1.get_mpz_t());
    const std::uint64_t h1 = mpz_get_ui(hi1.get_mpz_t());
    const std::uint64_t h2 = mpz_get_ui(hi2.get_mpz_t());
    detail::SmallResidueWalker w(f, 1);
    for (std::int64_t x = 1; x <= n; ++x, w.advance()) {
      const std::uint64_t r = w.value();
      count += (r >= l1 && r < h1) || r < h2;
    }
  } else {
    detail::BigResidueWalker w(f, 1);
    for (std::int64_t x = 1; x <= n; ++x, w.advance()) {
      const Integer &r = w.value();
      count += (r >= lo1 && r < hi1) || r < hi2;
    }
  }
  return count;
}

Rat discrepancy_exact(const CountingInstance &inst, const DiscrepancyWindow &window) {
  return Rat(static_cast<long>(window_count(inst, window))) -
         window.width() * Rat(static_cast<long>(inst.x_max()));
}

double discrepancy(const CountingInstance &inst, const DiscrepancyWindow &window) {
  return discrepancy_exact(inst, window).to_double();
}

double second_moment_lhs(const ExpSumSeries &series, std::int64_t H) {
  check_series(series, H);
  double s = 0.0;
  for (std::int64_t h = 1; h <= H; ++h)
    s += std::norm(series.at(h)) / static_cast<double>(h);
  return s;
}

double second_moment_lhs(const CountingInstance &inst, std::int64_t H) {
  return second_moment_lhs(exp_sum_series(inst, H), H);
}

double cauchy_schwarz_rhs(const ExpSumSeries &series, std::int64_t H) {
  return std::sqrt(harmonic(H)) * std::sqrt(second_moment_lhs(series, H));
}

Complex geometric_inner_sum(const Rat &theta, std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("geometric_inner_sum: n must be positive");
  if (theta.is_integer())
    return Complex(static_cast<double>(n), 0.0);
  // e(theta) (e(n theta) - 1) / (e(theta) - 1) = e(theta (n + 1) / 2) sin(pi n theta) / sin(pi theta)
  const Rat rn(static_cast<long>(n));
  const double amplitude = sin_pi(rn * theta) / sin_pi(theta);
  return unit_phase(theta * (rn + Rat(1)) / Rat(2)) * amplitude;
}

namespace {

/// Rational evaluation, for denominators too large for the residue path.
Complex weyl_rational(const CountingInstance &inst, std::int64_t H) {
  const std::int64_t n = inst.x_max();
  const Rat c = inst.parabola().alpha() / inst.a();
  const Rat &beta = inst.parabola().beta();
  Complex total = 0.0;
  for (std::int64_t h = 1; h <= H; ++h) {
    const Rat rh(static_cast<long>(h));
    Complex row = 0.0;
    for (std::int64_t l = -(n - 1); l <= n - 1; ++l) {
      const Rat rl(static_cast<long>(l));
      const Rat outer = rh * (c * rl * rl + beta * rl);
      const Rat theta = Rat(2) * c * rh * rl;
      // y runs over max(1, 1 - l) .. min(n, n - l): n - |l| consecutive values.
      const std::int64_t y0 = l >= 0 ? 1 : 1 - l;
      const std::int64_t count = n - (l >= 0 ? l : -l);
      const Complex inner =
          unit_phase(theta * Rat(static_cast<long>(y0 - 1))) * geometric_inner_sum(theta, count);
      row += unit_phase(outer) * inner;
    }
    total += row / static_cast<double>(h);
  }
  return total;
}

using u128 = unsigned __int128;

/// Signed value reduced into [0, m).
std::uint64_t residue(std::int64_t v, std::uint64_t m) {
  const std::int64_t r = v % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(x) * y % m);
}

/// sin(pi u / d) for 0 <= u < 2d.
double sin_pi_residue(std::uint64_t u, std::uint64_t d) {
  double sign = 1.0;
  if (u >= d) {
    u -= d;
    sign = -1.0;
  }
  const std::uint64_t s = std::min(u, d - u);
  return sign * std::sin(std::numbers::pi * static_cast<double>(s) / static_cast<double>(d));
}

/// Same sum with alpha / a = A / D and beta = B / D taken from the integer
/// form, every phase held as an exact residue mod D (or 2D for the sines).
/// Requires D < 2^62.
Complex weyl_residue(const CountingInstance &inst, std::int64_t H) {
  const IntegerForm &f = inst.form();
  const std::uint64_t d = mpz_get_ui(f.D.get_mpz_t());
  const std::uint64_t d2 = 2 * d;
  const std::uint64_t a1 = detail::mod_u64(f.A, f.D);
  const std::uint64_t b1 = detail::mod_u64(f.B, f.D);
  const std::uint64_t a2 = detail::mod_u64(f.A, Integer(2 * f.D));
  const std::int64_t n = inst.x_max();
  Complex total = 0.0;
  for (std::int64_t h = 1; h <= H; ++h) {
    const std::uint64_t hd = residue(h, d), hd2 = residue(h, d2);
    Complex row = 0.0;
    for (std::int64_t l = -(n - 1); l <= n - 1; ++l) {
      const std::uint64_t ld = residue(l, d), ld2 = residue(l, d2);
      const std::int64_t y0 = l >= 0 ? 1 : 1 - l;
      const std::int64_t count = n - (l >= 0 ? l : -l);
      // outer: h (A l^2 + B l) / D
      const std::uint64_t quad = detail::add_mod(mul_mod(a1, mul_mod(ld, ld, d), d),
                                                 mul_mod(b1, ld, d), d);
      std::uint64_t phase = mul_mod(hd, quad, d);
      // A h l mod D and theta = 2 A h l / D mod 2 as a residue mod 2D.
      const std::uint64_t ahl = mul_mod(a1, mul_mod(hd, ld, d), d);
      const std::uint64_t ahl2 = mul_mod(a2, mul_mod(hd2, ld2, d2), d2);
      const std::uint64_t theta2 = detail::add_mod(ahl2, ahl2, d2);
      if (theta2 % d == 0) {
        row += unit_phase(Rat(Integer(phase), f.D)) * static_cast<double>(count);
        continue;
      }
      // shift e(theta (y0 - 1)) and centre e(theta (count + 1) / 2)
      phase = detail::add_mod(phase, mul_mod(detail::add_mod(ahl, ahl, d), residue(y0 - 1, d), d), d);
      phase = detail::add_mod(phase, mul_mod(ahl, residue(count + 1, d), d), d);
      const double amplitude = sin_pi_residue(mul_mod(theta2, residue(count, d2), d2), d) /
                               sin_pi_residue(theta2, d);
      const double t = 2 * phase > d ? -static_cast<double>(d - phase) / static_cast<double>(d)
                                     : static_cast<double>(phase) / static_cast<double>(d);
      row += phase_from_fraction(t) * amplitude;
    }
    total += row / static_cast<double>(h);
  }
  return total;
}

} // namespace

Complex second_moment_weyl_complex(const CountingInstance &inst, std::int64_t H) {
  check_H(H);
  if (mpz_sizeinbase(inst.form().D.get_mpz_t(), 2) <= 61)
    return weyl_residue(inst, H);
  return weyl_rational(inst, H);
}

Complex second_moment_weyl_rational(const CountingInstance &inst, std::int64_t H) {
  check_H(H);
  return weyl_rational(inst, H);
}

double second_moment_weyl(const CountingInstance &inst, std::int64_t H) {
  const Complex v = second_moment_weyl_complex(inst, H);
  if (std::abs(v.imag()) >= 1e-9 * (1.0 + std::abs(v.real())))
    throw std::runtime_error("second_moment_weyl: imaginary residual " +
                             std::to_string(v.imag()) + " is not negligible");
  return v.real();
}

} // namespace plattice
