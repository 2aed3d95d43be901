#include "plattice/divisor_bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "residues.hpp"

namespace plattice {

void EnvelopeParams::validate() const {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  if (!(C > 0.0))
    throw std::invalid_argument("C must be positive");
}

std::int64_t paper_H(const Rat &a, const Rat &b) {
  const Rat s = a + b;
  const Rat ratio = Rat(4) * a * b * b / (s * s);
  Integer root;
  const Integer fl = floor(ratio);
  mpz_sqrt(root.get_mpz_t(), fl.get_mpz_t());
  return to_int64(root);
}

ProofParameters proof_parameters(const CountingInstance &inst) {
  return {inst.a() / (Rat(2) * inst.parabola().alpha()), paper_H(inst.a(), inst.b()),
          inst.delta_cap()};
}

bool trivial_regime(const CountingInstance &inst) { return inst.b() * inst.b() <= inst.a(); }

std::uint64_t sigma(std::uint64_t j) {
  if (j == 0)
    throw std::invalid_argument("sigma: j must be positive");
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= j; ++d) {
    if (j % d == 0) {
      s += d;
      if (d != j / d)
        s += j / d;
    }
  }
  return s;
}

std::uint64_t num_divisors(std::uint64_t j) {
  if (j == 0)
    throw std::invalid_argument("num_divisors: j must be positive");
  std::uint64_t c = 0;
  for (std::uint64_t d = 1; d * d <= j; ++d) {
    if (j % d == 0)
      c += d == j / d ? 1 : 2;
  }
  return c;
}

namespace {

/// Every integer h with h < b satisfies h <= cutoff.
std::uint64_t strict_cutoff(const Rat &b) {
  const Integer c = ceil(b) - 1;
  return sgn(c) <= 0 ? 0 : mpz_get_ui(c.get_mpz_t());
}

} // namespace

std::uint64_t g_trunc(std::uint64_t j, const Rat &b) {
  if (j == 0)
    throw std::invalid_argument("g_trunc: j must be positive");
  const std::uint64_t cut = strict_cutoff(b);
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= j; ++d) {
    if (j % d != 0)
      continue;
    const std::uint64_t e = j / d;
    if (d <= cut)
      s += d;
    if (e != d && e <= cut)
      s += e;
  }
  return s;
}

DivisorTable::DivisorTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit > 0xFFFFFFFFull)
    throw std::invalid_argument("DivisorTable: limit too large");
  for (std::uint64_t i = 2; i <= limit_; ++i) {
    if (spf_[i] != 0)
      continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t k = i * i; k <= limit_; k += i)
      if (spf_[k] == 0)
        spf_[k] = static_cast<std::uint32_t>(i);
  }
}

void DivisorTable::check(std::uint64_t j) const {
  if (j == 0 || j > limit_)
    throw std::out_of_range("DivisorTable: j = " + std::to_string(j) + " outside [1, " +
                            std::to_string(limit_) + "]");
}

std::uint64_t DivisorTable::sigma(std::uint64_t j) const {
  check(j);
  std::uint64_t s = 1;
  while (j > 1) {
    const std::uint64_t p = spf_[j];
    std::uint64_t term = 1, pk = 1;
    while (j % p == 0) {
      j /= p;
      pk *= p;
      term += pk;
    }
    s *= term;
  }
  return s;
}

std::uint64_t DivisorTable::num_divisors(std::uint64_t j) const {
  check(j);
  std::uint64_t c = 1;
  while (j > 1) {
    const std::uint64_t p = spf_[j];
    std::uint64_t e = 0;
    while (j % p == 0) {
      j /= p;
      ++e;
    }
    c *= e + 1;
  }
  return c;
}

std::vector<std::uint64_t> DivisorTable::divisors(std::uint64_t j) const {
  check(j);
  std::vector<std::uint64_t> out{1};
  while (j > 1) {
    const std::uint64_t p = spf_[j];
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    while (j % p == 0) {
      j /= p;
      pk *= p;
      for (std::size_t i = 0; i < base; ++i)
        out.push_back(out[i] * pk);
    }
  }
  return out;
}

std::uint64_t DivisorTable::g_trunc(std::uint64_t j, const Rat &b) const {
  check(j);
  const std::uint64_t cut = strict_cutoff(b);
  if (j <= cut)
    return sigma(j);
  std::uint64_t s = 0;
  for (std::uint64_t d : divisors(j))
    if (d <= cut)
      s += d;
  return s;
}

double divisor_envelope_f(double j, double epsilon) {
  if (!(j >= 3.0))
    throw std::invalid_argument("divisor_envelope_f: j must be at least 3");
  const double lj = std::log(j);
  return std::exp((1.0 + epsilon) * std::numbers::ln2 * lj / std::log(lj));
}

namespace {

/// min(2b, ||j c||^{-1}) for the fixed rational c = 2 alpha / a = p / q.
/// For integer dist = q ||j c||: q / dist >= 2b  <=>  dist <= floor(q / 2b).
class ResonanceKernel {
public:
  explicit ResonanceKernel(const CountingInstance &inst)
      : two_b_(2.0 * inst.b().to_double()) {
    const Rat c = Rat(2) * inst.parabola().alpha() / inst.a();
    p_ = abs(Rat(c.num())).num(); // ||-t|| = ||t||
    q_ = c.den();
    dist_cap_ = floor(Rat(q_) / (Rat(2) * inst.b()));
    small_ = detail::small_modulus(q_);
    if (small_) {
      qs_ = mpz_get_ui(q_.get_mpz_t());
      ps_ = detail::mod_u64(p_, q_);
      cap_s_ = mpz_get_ui(dist_cap_.get_mpz_t());
    }
  }

  double operator()(std::int64_t j) const {
    if (small_) {
      const auto r = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(static_cast<std::uint64_t>(j) % qs_) * ps_ % qs_);
      const std::uint64_t dist = std::min(r, qs_ - r);
      if (dist <= cap_s_)
        return two_b_;
      return static_cast<double>(qs_) / static_cast<double>(dist);
    }
    Integer r = p_ * j;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), q_.get_mpz_t());
    const Integer other = q_ - r;
    const Integer dist = r < other ? r : other;
    if (dist <= dist_cap_)
      return two_b_;
    return ratio_to_double(q_, dist);
  }

private:
  double two_b_;
  Integer p_, q_, dist_cap_;
  bool small_ = false;
  std::uint64_t ps_ = 0, qs_ = 1, cap_s_ = 0;
};

/// Largest integer j with j < x, or 0.
std::int64_t last_below(const Rat &x) {
  const Integer c = ceil(x) - 1;
  return sgn(c) <= 0 ? 0 : to_int64(c);
}

} // namespace

double resonance_weight(const CountingInstance &inst, std::int64_t j) {
  return ResonanceKernel(inst)(j);
}

double I_sum(const CountingInstance &inst, std::int64_t H) {
  if (H < 1)
    throw std::invalid_argument("I_sum: H must be positive");
  const std::int64_t jmax = last_below(inst.b() * Rat(static_cast<long>(H)));
  if (jmax < 1)
    return 0.0;
  const ResonanceKernel w(inst);
  const DivisorTable table(static_cast<std::uint64_t>(jmax));
  double s = 0.0;
  for (std::int64_t j = 1; j <= jmax; ++j)
    s += w(j) * static_cast<double>(table.g_trunc(static_cast<std::uint64_t>(j), inst.b())) /
         static_cast<double>(j);
  return s;
}

double I1_sum(const CountingInstance &inst) {
  const std::int64_t jmax = last_below(inst.b());
  const ResonanceKernel w(inst);
  double s = 0.0;
  for (std::int64_t j = 1; j <= jmax; ++j)
    s += w(j);
  return s;
}

double I2_sum(const CountingInstance &inst, std::int64_t H) {
  if (H < 1)
    throw std::invalid_argument("I2_sum: H must be positive");
  const std::int64_t jmin = last_below(inst.b()) + 1;
  const std::int64_t jmax = last_below(inst.b() * Rat(static_cast<long>(H)));
  const ResonanceKernel w(inst);
  double s = 0.0;
  for (std::int64_t j = jmin; j <= jmax; ++j)
    s += w(j) / static_cast<double>(j);
  return s;
}

double I_majorant(const CountingInstance &inst, std::int64_t H, double epsilon) {
  const double b = inst.b().to_double();
  const double loglog_b = std::log(std::log(std::max(b, 3.0)));
  const double bh = std::max(b * static_cast<double>(H), 3.0);
  return loglog_b * I1_sum(inst) + b * divisor_envelope_f(bh, epsilon) * I2_sum(inst, H);
}

double shift_double_sum(const CountingInstance &inst, std::int64_t H) {
  const ResonanceKernel w(inst);
  const std::int64_t n = inst.x_max();
  double s = 0.0;
  for (std::int64_t h = 1; h <= H; ++h) {
    double row = 0.0;
    for (std::int64_t l = 1; l < n; ++l)
      row += w(h * l);
    s += row / static_cast<double>(h);
  }
  return s;
}

double shift_double_sum_grouped(const CountingInstance &inst, std::int64_t H) {
  const std::int64_t n = inst.x_max();
  const std::int64_t jmax = H * (n - 1);
  if (jmax < 1)
    return 0.0;
  const ResonanceKernel w(inst);
  const DivisorTable table(static_cast<std::uint64_t>(jmax));
  double s = 0.0;
  for (std::int64_t j = 1; j <= jmax; ++j) {
    double weight = 0.0;
    for (std::uint64_t h : table.divisors(static_cast<std::uint64_t>(j))) {
      const auto hs = static_cast<std::int64_t>(h);
      if (hs <= H && j / hs < n)
        weight += 1.0 / static_cast<double>(h);
    }
    if (weight != 0.0)
      s += w(j) * weight;
  }
  return s;
}

double second_moment_majorant(const CountingInstance &inst, std::int64_t H) {
  double harmonic = 0.0;
  for (std::int64_t h = 1; h <= H; ++h)
    harmonic += 1.0 / static_cast<double>(h);
  return static_cast<double>(inst.x_max()) * harmonic + I_sum(inst, H);
}

double theorem1_envelope(double a, double b, const EnvelopeParams &p) {
  p.validate();
  const double sa = std::sqrt(a);
  const double delta = std::max(b * b * sa / (a + b), 3.0);
  const double ld = std::log(delta);
  return p.C * (sa + b / sa) * std::exp((std::numbers::ln2 / 2 + p.epsilon) * ld / std::log(ld));
}

double theorem1_envelope(const CountingInstance &inst, const EnvelopeParams &p) {
  p.validate();
  const double a = inst.a().to_double();
  const double b = inst.b().to_double();
  const double sa = std::sqrt(a);
  const double ld = std::log(inst.delta_cap());
  return p.C * (sa + b / sa) * std::exp((std::numbers::ln2 / 2 + p.epsilon) * ld / std::log(ld));
}

namespace {

void check_large_a(double a) {
  if (!(a >= 16.0))
    throw std::invalid_argument("envelope needs a >= 16, got " + std::to_string(a));
}

} // namespace

double popov_envelope(double a, const EnvelopeParams &p) {
  p.validate();
  check_large_a(a);
  const double la = std::log(a);
  return p.C * std::sqrt(a) * std::exp((0.75 * std::numbers::ln2 + p.epsilon) * la / std::log(la));
}

double huangli_envelope(double a, double b, const EnvelopeParams &p) {
  p.validate();
  check_large_a(a);
  const double la = std::log(a);
  return p.C * (std::sqrt(a) * la +
                b / std::sqrt(a) * std::exp((2.0 + p.epsilon) * std::sqrt(la) / std::log(la)));
}

double chamizo_pastor_floor(double a, const EnvelopeParams &p) {
  p.validate();
  check_large_a(a);
  if (p.epsilon >= std::numbers::sqrt2)
    throw std::invalid_argument("chamizo_pastor_floor needs epsilon < sqrt(2)");
  const double la = std::log(a);
  return p.C * std::sqrt(a) *
         std::exp((std::numbers::sqrt2 - p.epsilon) * std::sqrt(la) / std::log(la));
}

std::optional<std::int64_t> envelope_crossover(std::int64_t a_max, const EnvelopeParams &p) {
  if (a_max < 16)
    throw std::invalid_argument("envelope_crossover: a_max must be at least 16");
  for (std::int64_t a = a_max; a >= 16; --a) {
    const double ad = static_cast<double>(a);
    if (!(huangli_envelope(ad, ad, p) < popov_envelope(ad, p)))
      return a == a_max ? std::nullopt : std::optional<std::int64_t>(a + 1);
  }
  return 16;
}

} // namespace plattice
