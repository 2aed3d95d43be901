#include "plattice/rat.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace plattice {

Rat::Rat(const Integer &num, const Integer &den) : q_(num, den) {
  if (den == 0)
    throw std::invalid_argument("Rat: zero denominator");
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

Integer parse_signed_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw std::invalid_argument("Rat: cannot parse \"" + std::string(whole) + "\"");
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

Integer pow10(unsigned long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

} // namespace

Rat Rat::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty())
    throw std::invalid_argument("Rat: empty string");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_signed_integer(trim(s.substr(0, slash)), s);
    const std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text))
      throw std::invalid_argument("Rat: bad denominator in \"" + std::string(s) + "\"");
    const Integer den(std::string(den_text), 10);
    if (den == 0)
      throw std::invalid_argument("Rat: zero denominator in \"" + std::string(s) + "\"");
    return Rat(num, den);
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::string_view mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    std::string_view exp_text = s.substr(e + 1);
    const Integer ev = parse_signed_integer(exp_text, s);
    if (!ev.fits_slong_p() || abs(ev) > 100000)
      throw std::invalid_argument("Rat: exponent out of range in \"" + std::string(s) + "\"");
    exponent = ev.get_si();
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long scale = 0;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const std::string_view ip = mantissa.substr(0, dot);
    const std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
        (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("Rat: cannot parse \"" + std::string(s) + "\"");
    digits = std::string(ip) + std::string(fp);
    scale = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa))
      throw std::invalid_argument("Rat: cannot parse \"" + std::string(s) + "\"");
    digits = std::string(mantissa);
  }

  Integer num(digits, 10);
  if (negative)
    num = -num;
  const long shift = exponent - scale;
  if (shift >= 0)
    return Rat(Integer(num * pow10(static_cast<unsigned long>(shift))));
  return Rat(num, pow10(static_cast<unsigned long>(-shift)));
}

std::string Rat::to_string() const {
  if (is_integer())
    return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

Rat &Rat::operator+=(const Rat &o) {
  q_ += o.q_;
  return *this;
}
Rat &Rat::operator-=(const Rat &o) {
  q_ -= o.q_;
  return *this;
}
Rat &Rat::operator*=(const Rat &o) {
  q_ *= o.q_;
  return *this;
}
Rat &Rat::operator/=(const Rat &o) {
  if (o.sign() == 0)
    throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::operator-() const {
  Rat r = *this;
  r.q_ = -r.q_;
  return r;
}

std::ostream &operator<<(std::ostream &os, const Rat &x) { return os << x.to_string(); }

Rat abs(const Rat &x) { return x.sign() < 0 ? -x : x; }

Integer floor(const Rat &x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

Integer ceil(const Rat &x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

Rat frac(const Rat &x) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return Rat(r, x.den());
}

Rat psi(const Rat &x) { return frac(x) - Rat(1, 2); }

Rat dist_nearest_int(const Rat &x) {
  Rat f = frac(x);
  Rat g = Rat(1) - f;
  return f <= g ? f : g;
}

std::int64_t to_int64(const Integer &v) {
  if (!v.fits_slong_p())
    throw std::overflow_error("integer does not fit in 64 bits: " + v.get_str());
  return v.get_si();
}

double ratio_to_double(const Integer &v, const Integer &d) {
  long ev = 0, ed = 0;
  const double mv = mpz_get_d_2exp(&ev, v.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, d.get_mpz_t());
  return std::ldexp(mv / md, static_cast<int>(ev - ed));
}

} // namespace plattice
