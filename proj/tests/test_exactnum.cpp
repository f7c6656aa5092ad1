#include "doctest.h"
#include "strength/exactnum.hpp"

#include <cmath>
#include <random>

using namespace strength;

TEST_CASE("rational normalisation and errors") {
  Rational a(BigInt(6), BigInt(-4));
  CHECK(a.str() == "-3/2");
  CHECK(a.den() == 2);
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(Rational::parse("10/4") == Rational(BigInt(5), BigInt(2)));
  CHECK_THROWS(Rational::parse("x/2"));
}

TEST_CASE("rational round trips") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    Rational a(BigInt(d(rng)), BigInt(std::labs(d(rng)) + 1));
    Rational b(BigInt(d(rng)), BigInt(std::labs(d(rng)) + 1));
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
  }
}

TEST_CASE("nearest double conversion") {
  CHECK(to_double(Rational(BigInt(1), BigInt(3))).value == 1.0 / 3.0);
  CHECK(to_double(Rational(0)).value == 0.0);
  CHECK(to_double(Rational(BigInt(512), BigInt(420))).value == 512.0 / 420.0);
  CHECK(to_double(Rational(BigInt(-7), BigInt(80))).value == -7.0 / 80.0);
  // IEEE division of exactly representable integers is correctly rounded.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(1, (std::int64_t{1} << 53) - 1);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t p = d(rng), q = d(rng);
    Rational r(BigInt(static_cast<long>(p)), BigInt(static_cast<long>(q)));
    CHECK(to_double(r).value == static_cast<double>(p) / static_cast<double>(q));
  }
  BigInt big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 400);
  auto c = to_double(Rational(big));
  CHECK(c.overflow);
  CHECK(std::isinf(c.value));
  auto tiny = to_double(Rational(BigInt(1), big));
  CHECK(tiny.value == 0.0);
}

TEST_CASE("log ratio") {
  CHECK(log_ratio(BigInt(1), BigInt(10)) == doctest::Approx(-1.0));
  CHECK(log_ratio(BigInt(1000), BigInt(1)) == doctest::Approx(3.0));
  CHECK(log_ratio(LogScalar::from_double(1.0), LogScalar::from_double(10.0)) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(log_ratio(BigInt(1), BigInt(0)), std::domain_error);
  CHECK_THROWS_AS(log_ratio(LogScalar::from_double(1.0), LogScalar::zero()), std::domain_error);
}

TEST_CASE("log scalar products agree with exact products") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(1, 1000000);
  std::uniform_int_distribution<int> len(1, 100);
  for (int trial = 0; trial < 50; ++trial) {
    BigInt exact = 1;
    LogScalar lg = LogScalar::from_double(1.0);
    int count = len(rng);
    for (int i = 0; i < count; ++i) {
      long f = d(rng);
      exact *= f;
      lg *= LogScalar::from_double(static_cast<double>(f));
    }
    double rel = std::expm1(lg.log_magnitude() - log_abs(exact));
    CHECK(std::fabs(rel) < 1e-9);
  }
}

TEST_CASE("log scalar sums") {
  LogScalar a = LogScalar::from_double(3.0), b = LogScalar::from_double(-5.0);
  CHECK((a + b).to_double() == doctest::Approx(-2.0));
  CHECK((a - a).is_zero());
  std::vector<double> logs{std::log(1.0), std::log(2.0), -INFINITY, std::log(3.0)};
  CHECK(std::exp(log_sum_exp(logs)) == doctest::Approx(6.0));
}

TEST_CASE("exact dot of int64 vectors") {
  IntVector a(3), b(3);
  a << (std::int64_t{1} << 62), (std::int64_t{1} << 62), -3;
  b << 8, 8, 5;
  BigInt expect = BigInt(1) << 66;
  CHECK(exact_dot(a, b) == expect - 15);
}
