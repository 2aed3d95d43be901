#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "plattice/rat.hpp"

using plattice::Integer;
using plattice::Rat;

namespace {
Rat q(long n, long d) { return Rat(Integer(n), Integer(d)); }
} // namespace

TEST_CASE("canonical form") {
  const Rat r = q(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(0, 7).den() == 1);
  CHECK_THROWS_AS(q(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("parse and print") {
  CHECK(Rat::parse("22/7") == q(22, 7));
  CHECK(Rat::parse("-3") == Rat(-3));
  CHECK(Rat::parse("-0.25") == q(-1, 4));
  CHECK(Rat::parse("1e-3") == q(1, 1000));
  CHECK(Rat::parse("2.5E2") == Rat(250));
  CHECK(Rat::parse(" -4/6 ") == q(-2, 3));
  CHECK_THROWS(Rat::parse("4/-6"));
  CHECK_THROWS(Rat::parse(""));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat::parse("1/0"));
  CHECK(q(-7, 3).to_string() == "-7/3");
  CHECK(Rat(5).to_string() == "5");
  std::ostringstream os;
  os << q(1, 2);
  CHECK(os.str() == "1/2");
}

TEST_CASE("floor") {
  CHECK(plattice::floor(q(7, 2)) == 3);
  CHECK(plattice::floor(q(-1, 2)) == -1);
  CHECK(plattice::floor(Rat(4)) == 4);
  CHECK(plattice::ceil(q(7, 2)) == 4);
  CHECK(plattice::ceil(q(-1, 2)) == 0);
  CHECK(plattice::ceil(Rat(4)) == 4);
}

TEST_CASE("frac psi dist") {
  CHECK(plattice::frac(q(7, 2)) == q(1, 2));
  CHECK(plattice::frac(q(-1, 3)) == q(2, 3));
  CHECK(plattice::frac(Rat(5)) == Rat(0));
  CHECK(plattice::psi(q(7, 2)) == Rat(0));
  CHECK(plattice::psi(Rat(5)) == q(-1, 2));
  CHECK(plattice::psi(q(1, 4)) == q(-1, 4));
  CHECK(plattice::dist_nearest_int(q(7, 2)) == q(1, 2));
  CHECK(plattice::dist_nearest_int(q(-9, 10)) == q(1, 10));
  CHECK(plattice::dist_nearest_int(Rat(3)) == Rat(0));
}

TEST_CASE("conversions") {
  CHECK(plattice::to_int64(Integer(-42)) == -42);
  CHECK_THROWS_AS(plattice::to_int64(Integer("100000000000000000000")), std::overflow_error);
  CHECK(q(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
  const Integer big("1" + std::string(400, '0'));
  CHECK(plattice::ratio_to_double(big * 3, big * 4) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("properties on random rationals") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const long den = 1 + static_cast<long>(rng() % 1000);
    const long num = static_cast<long>(rng() % 2000001) - 1000000;
    const Rat x = q(num, den);
    const long k = static_cast<long>(rng() % 201) - 100;
    const Rat shifted = x + Rat(k);

    // floor(x) <= x < floor(x) + 1
    const Rat fl(plattice::floor(x));
    CHECK(fl <= x);
    CHECK(x < fl + Rat(1));
    CHECK(plattice::ceil(x) == -plattice::floor(-x));

    // mod-1 primitives are 1-periodic
    CHECK(plattice::frac(shifted) == plattice::frac(x));
    CHECK(plattice::psi(shifted) == plattice::psi(x));
    CHECK(plattice::dist_nearest_int(shifted) == plattice::dist_nearest_int(x));

    const Rat fr = plattice::frac(x);
    CHECK(fr >= Rat(0));
    CHECK(fr < Rat(1));
    const Rat d = plattice::dist_nearest_int(x);
    CHECK(d >= Rat(0));
    CHECK(d <= q(1, 2));
    CHECK(d == plattice::dist_nearest_int(-x));

    // arithmetic round trip stays canonical
    const Rat y = q(static_cast<long>(rng() % 999) + 1, static_cast<long>(rng() % 97) + 1);
    CHECK((x + y) - y == x);
    CHECK((x * y) / y == x);
    CHECK(Rat::parse(x.to_string()) == x);
  }
}
