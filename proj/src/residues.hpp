#pragma once

// Incremental walkers over r_x = N(x) mod D for the integer form
// f(x) = N(x) / D. N(x + 1) - N(x) = A(2x + 1) + B, whose own increment is 2A,
// so each step costs two modular additions.

#include <cstdint>

#include "plattice/counting.hpp"

namespace plattice::detail {

/// True when the modulus is small enough for the 64-bit walker.
inline bool small_modulus(const Integer &D) { return mpz_sizeinbase(D.get_mpz_t(), 2) <= 62; }

inline std::uint64_t mod_u64(const Integer &v, const Integer &D) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t());
  return mpz_get_ui(r.get_mpz_t());
}

inline std::uint64_t add_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  const std::uint64_t s = x + y;
  return s >= m ? s - m : s;
}

/// Requires small_modulus(f.D).
class SmallResidueWalker {
public:
  SmallResidueWalker(const IntegerForm &f, std::int64_t x)
      : modulus_(mpz_get_ui(f.D.get_mpz_t())), value_(mod_u64(f.numerator(x), f.D)),
        step_(mod_u64(Integer(f.A * (2 * x + 1) + f.B), f.D)),
        step2_(mod_u64(Integer(2 * f.A), f.D)) {}

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t value() const { return value_; }

  void advance() {
    value_ = add_mod(value_, step_, modulus_);
    step_ = add_mod(step_, step2_, modulus_);
  }

private:
  std::uint64_t modulus_;
  std::uint64_t value_;
  std::uint64_t step_;
  std::uint64_t step2_;
};

/// Arbitrary-size fallback.
class BigResidueWalker {
public:
  BigResidueWalker(const IntegerForm &f, std::int64_t x)
      : f_(f), numerator_(f.numerator(x)), step_(f.A * (2 * x + 1) + f.B), step2_(2 * f.A) {
    reduce();
  }

  const Integer &modulus() const { return f_.D; }
  const Integer &value() const { return value_; }

  void advance() {
    numerator_ += step_;
    step_ += step2_;
    reduce();
  }

private:
  void reduce() { mpz_fdiv_r(value_.get_mpz_t(), numerator_.get_mpz_t(), f_.D.get_mpz_t()); }

  const IntegerForm &f_;
  Integer numerator_;
  Integer step_;
  Integer step2_;
  Integer value_;
};

} // namespace plattice::detail
