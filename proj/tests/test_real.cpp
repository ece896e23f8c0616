#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dmop/discrete_operator.hpp"
#include "dmop/real.hpp"

using dmop::Real;

TEST_SUITE("real") {

TEST_CASE("construction and exactness") {
  CHECK(Real(0L, 128).is_zero());
  CHECK(Real(-7L, 64).to_double() == -7.0);
  CHECK(Real(mpz_class("123456789123456789123456789"), 128).to_double() ==
        doctest::Approx(1.23456789123456789e26));
  CHECK(Real(mpq_class(1, 3), 128).to_double() == doctest::Approx(1.0 / 3.0));

  // powers of two are exact at any precision
  CHECK(Real("0.5", 64) == Real(0.5, 256));
  CHECK(Real("-0.0625", 64).to_double() == -0.0625);
  CHECK(Real("1e3", 64).to_double() == 1000.0);
}

TEST_CASE("string parsing rejects trailing junk") {
  CHECK_THROWS_AS(Real("abc", 64), std::invalid_argument);
  CHECK_THROWS_AS(Real("1.5x", 64), std::invalid_argument);
  CHECK_THROWS_AS(Real("", 64), std::invalid_argument);
}

TEST_CASE("binary operations carry the wider precision") {
  const Real narrow(1L, 64);
  const Real wide(1L, 256);
  CHECK((narrow + wide).precision() == 256);
  CHECK((wide * narrow).precision() == 256);
  CHECK((narrow / 3L).precision() == 64);
  CHECK(dmop::round_to(wide, 64).precision() == 64);
}

TEST_CASE("log_abs is reliable far outside double range") {
  const Real big = dmop::pow_ui(Real(2L, 128), 5000);
  CHECK(big.log_abs() == doctest::Approx(5000.0 * std::log(2.0)).epsilon(1e-12));
  const Real tiny = 1L / big;
  CHECK(tiny.log_abs() == doctest::Approx(-5000.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::isinf(Real(0L, 64).log_abs()));
}

TEST_CASE("formatting produces the requested significant digits") {
  const Real third = Real(1L, 256) / 3L;
  CHECK(dmop::to_string(third, 10) == "3.333333333e-01");
  CHECK(dmop::to_string(Real(-2L, 64), 3) == "-2.00e+00");
}

TEST_CASE("operators are safe for concurrent reads") {
  // immutable after build: hammer value() and the convolution from several
  // threads and compare against a serial baseline
  const auto op = dmop::DiscreteOperator::build(3, Real(1L, 128), 8, 128);
  std::vector<double> baseline;
  for (long beta = 0; beta < 32; ++beta) baseline.push_back(op.value(beta).to_double());
  const double conv0 = dmop::convolve_dg(op, 0, 1e-10).to_double();

  std::vector<std::thread> workers;
  std::vector<int> mismatches(4, 0);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (int round = 0; round < 50; ++round) {
        for (long beta = 0; beta < 32; ++beta)
          if (op.value(beta).to_double() != baseline[static_cast<size_t>(beta)])
            ++mismatches[static_cast<size_t>(t)];
        if (dmop::convolve_dg(op, 0, 1e-10).to_double() != conv0)
          ++mismatches[static_cast<size_t>(t)];
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int m : mismatches) CHECK(m == 0);
}

}  // TEST_SUITE
