#pragma once

#include <gmpxx.h>

#include <vector>

#include "dmop/real.hpp"

namespace dmop {

mpz_class factorial(unsigned long n);

/// E_k(x) = sum_s a_s x^s, the degree-k polynomial whose coefficients are
/// the Eulerian numbers. Coefficients are exact integers always; floating
/// point enters only at evaluation time. Structural facts relied on
/// elsewhere: a_0 = a_k = 1, palindrome a_s = a_{k-s}, row sum (k+1)!,
/// all roots real, negative, simple, in reciprocal pairs.
struct EulerPolynomial {
  int degree = 0;
  std::vector<mpz_class> coeffs;  // ascending powers, size degree + 1

  /// Production path: a_s^(k) = (s+1) a_s^(k-1) + (k-s+1) a_{s-1}^(k-1),
  /// seeded with E_0 = 1. O(k^2) exact integer ops, no cancellation.
  static EulerPolynomial by_recurrence(int k);

  /// Oracle path: a_s^(k) = sum_{j=0..s} (-1)^j C(k+2, j) (s+1-j)^{k+1}.
  /// Alternating signs are harmless in exact arithmetic.
  static EulerPolynomial by_explicit_sum(int k);

  /// Horner evaluation at the wider of `prec` and x's precision. The error
  /// is a small multiple of one ulp relative to sum_s a_s |x|^s.
  Real eval(const Real& x, mpfr_prec_t prec) const;

  /// Same contract for the formal derivative.
  Real eval_derivative(const Real& x, mpfr_prec_t prec) const;

  mpz_class coefficient_sum() const;
  bool is_palindromic() const;
};

/// |E(x)| / E(|x|): residual relative to the natural evaluation scale
/// (all coefficients are positive, so E(|x|) is the sum of absolute terms).
double relative_residual(const EulerPolynomial& poly, const Real& x, mpfr_prec_t prec);

}  // namespace dmop
