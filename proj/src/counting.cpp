#include "plattice/counting.hpp"

#include <stdexcept>

#include "parallel.hpp"
#include "residues.hpp"

namespace plattice {

Parabola::Parabola(Rat alpha, Rat beta, Rat gamma)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  if (alpha_.sign() == 0)
    throw std::invalid_argument("Parabola: alpha must be nonzero");
}

Integer IntegerForm::numerator(std::int64_t x) const {
  Integer n = A * x;
  n += B;
  n *= x;
  n += C;
  return n;
}

namespace {

double delta_parameter(const Rat &a, const Rat &b) {
  mpf_class af(a.gmp(), 256), bf(b.gmp(), 256);
  mpf_class v(0, 256);
  v = bf * bf * sqrt(af) / (af + bf);
  const double d = v.get_d();
  return d > 3.0 ? d : 3.0;
}

IntegerForm make_form(const Parabola &p, const Rat &a) {
  const Rat c2 = p.alpha() / a;
  const Rat c1 = p.beta();
  const Rat c0 = p.gamma() * a;
  IntegerForm f;
  mpz_lcm(f.D.get_mpz_t(), c2.den().get_mpz_t(), c1.den().get_mpz_t());
  mpz_lcm(f.D.get_mpz_t(), f.D.get_mpz_t(), c0.den().get_mpz_t());
  f.A = c2.num() * (f.D / c2.den());
  f.B = c1.num() * (f.D / c1.den());
  f.C = c0.num() * (f.D / c0.den());
  return f;
}

void check_block(const CountingInstance &inst, std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi > inst.x_max())
    throw std::out_of_range("block outside 1..x_max");
}

void check_delta(const Rat &delta) {
  if (delta.sign() <= 0 || delta >= Rat(1, 2))
    throw std::invalid_argument("delta must lie in (0, 1/2), got " + delta.to_string());
}

} // namespace

CountingInstance::CountingInstance(Parabola parabola, Rat a, Rat b, Admission admission)
    : parabola_(std::move(parabola)), a_(std::move(a)), b_(std::move(b)), admission_(admission) {
  if (admission_ == Admission::strict) {
    if (a_ <= Rat(1))
      throw std::invalid_argument("a must exceed 1, got " + a_.to_string());
    if (b_ <= Rat(1))
      throw std::invalid_argument("b must exceed 1, got " + b_.to_string());
  } else {
    if (a_.sign() <= 0)
      throw std::invalid_argument("a must be positive, got " + a_.to_string());
    if (b_ < Rat(1))
      throw std::invalid_argument("b must be at least 1, got " + b_.to_string());
  }
  x_max_ = to_int64(floor(b_));
  delta_cap_ = delta_parameter(a_, b_);
  form_ = make_form(parabola_, a_);
}

Rat f_value(const CountingInstance &inst, std::int64_t x) {
  if (x < 1 || x > inst.x_max())
    throw std::out_of_range("f_value: x outside 1..x_max");
  const Parabola &p = inst.parabola();
  const Rat rx(static_cast<long>(x));
  return p.alpha() * rx * rx / inst.a() + p.beta() * rx + p.gamma() * inst.a();
}

std::vector<std::pair<std::int64_t, std::int64_t>> split_range(std::int64_t n, unsigned parts) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (n <= 0)
    return out;
  const std::int64_t k = std::min<std::int64_t>(n, parts == 0 ? 1 : parts);
  const std::int64_t base = n / k, extra = n % k;
  std::int64_t lo = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t len = base + (i < extra ? 1 : 0);
    out.emplace_back(lo, lo + len - 1);
    lo += len;
  }
  return out;
}

Integer floor_sum_block(const CountingInstance &inst, std::int64_t lo, std::int64_t hi) {
  check_block(inst, lo, hi);
  Integer total = 0;
  if (lo > hi)
    return total;
  const IntegerForm &f = inst.form();
  Integer n = f.numerator(lo);
  Integer step = f.A * (2 * lo + 1) + f.B;
  const Integer step2 = 2 * f.A;
  Integer q;
  for (std::int64_t x = lo; x <= hi; ++x) {
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), f.D.get_mpz_t());
    total += q;
    n += step;
    step += step2;
  }
  return total;
}

Rat psi_sum_block(const CountingInstance &inst, std::int64_t lo, std::int64_t hi) {
  check_block(inst, lo, hi);
  if (lo > hi)
    return Rat(0);
  const IntegerForm &f = inst.form();
  Integer residues = 0;
  if (detail::small_modulus(f.D)) {
    detail::SmallResidueWalker w(f, lo);
    unsigned __int128 acc = 0;
    for (std::int64_t x = lo; x <= hi; ++x, w.advance())
      acc += w.value();
    const auto high = static_cast<std::uint64_t>(acc >> 64);
    const auto low = static_cast<std::uint64_t>(acc);
    residues = Integer(high);
    residues <<= 64;
    residues += Integer(low);
  } else {
    detail::BigResidueWalker w(f, lo);
    for (std::int64_t x = lo; x <= hi; ++x, w.advance())
      residues += w.value();
  }
  const long count = static_cast<long>(hi - lo + 1);
  return Rat(residues, f.D) - Rat(Integer(count), Integer(2));
}

std::int64_t near_count_block(const CountingInstance &inst, const Rat &delta, std::int64_t lo,
                              std::int64_t hi) {
  check_delta(delta);
  check_block(inst, lo, hi);
  const IntegerForm &f = inst.form();
  // ||r/D|| < delta  <=>  min(r, D - r) < ceil(delta D) for integer r.
  const Integer threshold = ceil(delta * Rat(f.D));
  std::int64_t count = 0;
  if (lo > hi)
    return count;
  if (detail::small_modulus(f.D)) {
    const std::uint64_t t = mpz_get_ui(threshold.get_mpz_t());
    detail::SmallResidueWalker w(f, lo);
    const std::uint64_t d = w.modulus();
    for (std::int64_t x = lo; x <= hi; ++x, w.advance()) {
      const std::uint64_t r = w.value();
      count += std::min(r, d - r) < t;
    }
  } else {
    detail::BigResidueWalker w(f, lo);
    Integer other;
    for (std::int64_t x = lo; x <= hi; ++x, w.advance()) {
      other = f.D - w.value();
      count += (w.value() < other ? w.value() : other) < threshold;
    }
  }
  return count;
}

Integer floor_sum(const CountingInstance &inst, unsigned workers) {
  return detail::sum_over_blocks(inst.x_max(), workers, Integer(0),
                                 [&](std::int64_t lo, std::int64_t hi) {
                                   return floor_sum_block(inst, lo, hi);
                                 });
}

Rat main_term(const CountingInstance &inst) {
  const Integer m = Integer(static_cast<long>(inst.x_max()));
  const Integer s1 = m * (m + 1) / 2;
  const Integer s2 = m * (m + 1) * (2 * m + 1) / 6;
  const Parabola &p = inst.parabola();
  return p.alpha() / inst.a() * Rat(s2) + p.beta() * Rat(s1) + p.gamma() * inst.a() * Rat(m) -
         Rat(m, Integer(2));
}

Rat psi_sum(const CountingInstance &inst, unsigned workers) {
  return detail::sum_over_blocks(inst.x_max(), workers, Rat(0),
                                 [&](std::int64_t lo, std::int64_t hi) {
                                   return psi_sum_block(inst, lo, hi);
                                 });
}

ErrorTerm error_term(const CountingInstance &inst, unsigned workers) {
  Rat s = Rat(floor_sum(inst, workers)) - main_term(inst);
  Rat magnitude = abs(s);
  return {std::move(s), std::move(magnitude)};
}

std::int64_t near_count(const CountingInstance &inst, const Rat &delta, unsigned workers) {
  check_delta(delta);
  return detail::sum_over_blocks(inst.x_max(), workers, std::int64_t{0},
                                 [&](std::int64_t lo, std::int64_t hi) {
                                   return near_count_block(inst, delta, lo, hi);
                                 });
}

Rat near_count_error(const CountingInstance &inst, const Rat &delta) {
  return Rat(static_cast<long>(near_count(inst, delta))) - Rat(2) * delta * inst.b();
}

Rat near_count_error_floor_b(const CountingInstance &inst, const Rat &delta) {
  return Rat(static_cast<long>(near_count(inst, delta))) -
         Rat(2) * delta * Rat(static_cast<long>(inst.x_max()));
}

} // namespace plattice
