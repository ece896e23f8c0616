#include <doctest.h>

#include <random>
#include <vector>

#include "dmop/errors.hpp"
#include "dmop/euler.hpp"

using dmop::EulerPolynomial;
using dmop::Real;

namespace {

std::vector<mpz_class> row(std::initializer_list<long> values) {
  return {values.begin(), values.end()};
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("recurrence: frozen low-degree rows") {
  CHECK(EulerPolynomial::by_recurrence(0).coeffs == row({1}));
  CHECK(EulerPolynomial::by_recurrence(1).coeffs == row({1, 1}));
  // two recurrence steps from E_1 by hand
  CHECK(EulerPolynomial::by_recurrence(3).coeffs == row({1, 11, 11, 1}));
}

TEST_CASE("explicit sum: frozen low-degree rows") {
  CHECK(EulerPolynomial::by_explicit_sum(0).coeffs == row({1}));
  // a_1 = 2^3 - C(4,1) 1^3 = 4 by hand
  CHECK(EulerPolynomial::by_explicit_sum(2).coeffs == row({1, 4, 1}));
  CHECK(EulerPolynomial::by_explicit_sum(4).coeffs == row({1, 26, 66, 26, 1}));
}

TEST_CASE("both constructions agree exactly up to degree 40") {
  for (int k = 0; k <= 40; ++k) {
    const auto rec = EulerPolynomial::by_recurrence(k);
    const auto exp = EulerPolynomial::by_explicit_sum(k);
    REQUIRE(rec.coeffs == exp.coeffs);
    REQUIRE(rec.is_palindromic());
    REQUIRE(rec.coeffs.front() == 1);
    REQUIRE(rec.coeffs.back() == 1);
    for (const auto& c : rec.coeffs) REQUIRE(c > 0);
    REQUIRE(rec.coefficient_sum() ==
            dmop::factorial(static_cast<unsigned long>(k) + 1));
  }
}

TEST_CASE("evaluation examples") {
  const mpfr_prec_t prec = 128;
  const auto e1 = EulerPolynomial::by_recurrence(1);
  const auto e2 = EulerPolynomial::by_recurrence(2);
  const auto e3 = EulerPolynomial::by_recurrence(3);

  CHECK(e2.eval(Real(1L, prec), prec) == Real(6L, prec));  // row sum 3!
  CHECK(e3.eval(Real(0L, prec), prec) == Real(1L, prec));

  // -2 + sqrt(3) solves x^2 + 4x + 1 = 0
  const Real root = dmop::sqrt_ui(3, 256) - 2L;
  CHECK(dmop::abs(e2.eval(root, 256)).to_double() < 1e-70);

  CHECK(e2.eval_derivative(Real(0L, prec), prec) == Real(4L, prec));
  CHECK(e1.eval_derivative(Real(0.734, prec), prec) == Real(1L, prec));
  // 3 x^2 + 22 x + 11 at x = -1
  CHECK(e3.eval_derivative(Real(-1L, prec), prec) == Real(-8L, prec));
}

TEST_CASE("recurrence identity holds as a polynomial identity at sampled points") {
  const mpfr_prec_t prec = 192;
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> span(-2.0, 2.0);
  for (int k = 1; k <= 12; ++k) {
    const auto ek = EulerPolynomial::by_recurrence(k);
    const auto prev = EulerPolynomial::by_recurrence(k - 1);
    for (int trial = 0; trial < 8; ++trial) {
      const Real x(span(rng), prec);
      const Real lhs = ek.eval(x, prec);
      const Real rhs = (Real(k, prec) * x + 1L) * prev.eval(x, prec) +
                       x * (1L - x) * prev.eval_derivative(x, prec);
      const Real scale = ek.eval(dmop::abs(x), prec) + Real(1L, prec);
      CHECK((dmop::abs(lhs - rhs) / scale).to_double() < 1e-45);
    }
  }
}

TEST_CASE("reflection: E_k(x) = x^k E_k(1/x)") {
  const mpfr_prec_t prec = 192;
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> span(0.1, 3.0);
  for (int k = 0; k <= 10; ++k) {
    const auto ek = EulerPolynomial::by_recurrence(k);
    for (int trial = 0; trial < 6; ++trial) {
      double mag = span(rng);
      if (trial % 2 == 0) mag = -mag;
      const Real x(mag, prec);
      const Real lhs = ek.eval(x, prec);
      const Real rhs =
          dmop::pow_ui(x, static_cast<unsigned long>(k)) * ek.eval(1L / x, prec);
      const Real scale = ek.eval(dmop::abs(x), prec);
      CHECK((dmop::abs(lhs - rhs) / scale).to_double() < 1e-45);
    }
  }
}

TEST_CASE("degree preconditions") {
  CHECK_THROWS_AS(EulerPolynomial::by_recurrence(-1), std::invalid_argument);
  CHECK_THROWS_AS(EulerPolynomial::by_explicit_sum(-3), std::invalid_argument);
  CHECK_THROWS_AS(EulerPolynomial::by_recurrence(1 << 20), dmop::CapacityError);
}

}  // TEST_SUITE
