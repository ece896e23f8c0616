#include "dmop/euler.hpp"

#include <stdexcept>

#include "dmop/errors.hpp"

namespace dmop {

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

namespace {

// Desk-scale cap; the triangle is O(k^2) exact integer work and the
// entries grow like (k+1)!.
constexpr int kMaxDegree = 1 << 16;

void check_degree(int k) {
  if (k < 0) throw std::invalid_argument("Euler polynomial degree must be >= 0");
  if (k > kMaxDegree) throw CapacityError("Euler polynomial degree exceeds capacity limit");
}

}  // namespace

EulerPolynomial EulerPolynomial::by_recurrence(int k) {
  check_degree(k);
  std::vector<mpz_class> row{1};
  for (int j = 1; j <= k; ++j) {
    std::vector<mpz_class> next(static_cast<size_t>(j) + 1);
    for (int s = 0; s <= j; ++s) {
      mpz_class acc = 0;
      if (s < j) acc += (s + 1) * row[static_cast<size_t>(s)];
      if (s > 0) acc += (j - s + 1) * row[static_cast<size_t>(s) - 1];
      next[static_cast<size_t>(s)] = acc;
    }
    row = std::move(next);
  }
  return EulerPolynomial{k, std::move(row)};
}

EulerPolynomial EulerPolynomial::by_explicit_sum(int k) {
  check_degree(k);
  std::vector<mpz_class> row(static_cast<size_t>(k) + 1);
  mpz_class binom, power;
  for (int s = 0; s <= k; ++s) {
    mpz_class acc = 0;
    for (int j = 0; j <= s; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k) + 2,
                   static_cast<unsigned long>(j));
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(s + 1 - j),
                    static_cast<unsigned long>(k) + 1);
      if (j % 2 == 0)
        acc += binom * power;
      else
        acc -= binom * power;
    }
    row[static_cast<size_t>(s)] = acc;
  }
  return EulerPolynomial{k, std::move(row)};
}

Real EulerPolynomial::eval(const Real& x, mpfr_prec_t prec) const {
  const mpfr_prec_t wp = prec > x.precision() ? prec : x.precision();
  Real acc(coeffs.back(), wp);
  for (int s = degree - 1; s >= 0; --s) {
    acc *= x;
    acc += Real(coeffs[static_cast<size_t>(s)], wp);
  }
  return acc;
}

Real EulerPolynomial::eval_derivative(const Real& x, mpfr_prec_t prec) const {
  const mpfr_prec_t wp = prec > x.precision() ? prec : x.precision();
  if (degree == 0) return Real(0L, wp);
  Real acc(mpz_class(coeffs.back() * degree), wp);
  for (int s = degree - 1; s >= 1; --s) {
    acc *= x;
    acc += Real(mpz_class(coeffs[static_cast<size_t>(s)] * s), wp);
  }
  return acc;
}

mpz_class EulerPolynomial::coefficient_sum() const {
  mpz_class sum = 0;
  for (const auto& c : coeffs) sum += c;
  return sum;
}

bool EulerPolynomial::is_palindromic() const {
  const size_t n = coeffs.size();
  for (size_t s = 0; s < n / 2; ++s)
    if (coeffs[s] != coeffs[n - 1 - s]) return false;
  return true;
}

double relative_residual(const EulerPolynomial& poly, const Real& x, mpfr_prec_t prec) {
  const Real value = poly.eval(x, prec);
  const Real scale = poly.eval(abs(x), prec);
  return (abs(value) / scale).to_double();
}

}  // namespace dmop
