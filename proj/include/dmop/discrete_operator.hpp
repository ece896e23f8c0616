#pragma once

#include <gmpxx.h>

#include <vector>

#include "dmop/errors.hpp"
#include "dmop/real.hpp"
#include "dmop/rootfind.hpp"

namespace dmop {

inline constexpr long kDefaultRadiusCap = 1'000'000;
inline constexpr double kDefaultTailEpsilon = 1e-12;

/// The (2m+1)-tap alternating binomial stencil of order 2m:
/// taps[m+k] = (-1)^{k+m} C(2m, m+k), k = -m..m.
struct Stencil {
  int m = 1;
  std::vector<mpz_class> taps;

  static Stencil of_order(int m);
  mpz_class tap_sum() const;
};

/// Samples on an integer-indexed grid with step h and finite support.
struct DiscreteFunction {
  Real step{kDefaultPrecision};
  long offset = 0;
  std::vector<Real> values;

  DiscreteFunction() = default;
  /// Validates: step finite and positive, every sample finite.
  DiscreteFunction(Real step, long offset, std::vector<Real> values);
};

/// D_m on the lattice of step h: an explicit table out to table_radius plus
/// the root/amplitude data that extends it in closed form to any index.
///
/// D_m[beta] = (2m-1)!/h^2m * (c[beta] + sum_k A_k lambda_k^(|beta|-1)) with
/// c[0] = -2^(2m-1) - correction so that the beta = 0 case reads
/// -2^(2m-1) + sum_k A_k/lambda_k, c[1] = 1, c = 0 beyond, and
/// A_k = (1-lambda_k)^(2m+1) / E_{2m-1}(lambda_k).
///
/// Values are symmetric in beta and, for m >= 2, decay geometrically with
/// ratio max_k |lambda_k|. For m = 1 the root set is empty and the operator
/// degenerates to the classical (1, -2, 1)/h^2 stencil.
class DiscreteOperator {
 public:
  static DiscreteOperator build(int m, const Real& h, int table_radius,
                                mpfr_prec_t precision, double root_tolerance = 1e-30);

  int order_m() const { return m_; }
  const Real& step() const { return h_; }
  mpfr_prec_t precision() const { return precision_; }
  int table_radius() const { return table_radius_; }
  const RootSet& roots() const { return roots_; }
  const std::vector<Real>& amplitudes() const { return amplitudes_; }
  /// (2m-1)! / h^2m
  const Real& scale_factor() const { return factor_; }

  /// D_m[beta], exact at working precision for any beta: table lookup up to
  /// table_radius, closed-form geometric tail beyond. Even in beta.
  Real value(long beta) const;

  /// max_k |lambda_k|; 0 for m = 1.
  double decay_ratio() const { return decay_ratio_; }
  /// ln((2m-1)!/h^2m * sum_k |A_k|); -inf for m = 1.
  double ln_tail_coefficient() const { return ln_tail_coef_; }
  /// Upper estimate of sum_beta |D_m[beta]| (the operator's row scale).
  double ln_row_scale() const { return ln_row_scale_; }

 private:
  DiscreteOperator() = default;

  int m_ = 1;
  Real h_{kDefaultPrecision};
  mpfr_prec_t precision_ = kDefaultPrecision;
  int table_radius_ = 2;
  RootSet roots_;
  std::vector<Real> amplitudes_;
  Real factor_{kDefaultPrecision};
  std::vector<Real> table_;  // index |beta| = 0..table_radius
  double decay_ratio_ = 0.0;
  double ln_tail_coef_ = 0.0;
  double ln_row_scale_ = 0.0;
};

/// G_m[beta] = (h beta)^(2m-1) sign(h beta) / (2 (2m-1)!), the discretized
/// fundamental solution that D_m inverts.
Real g_value(int m, const Real& h, long beta, mpfr_prec_t precision);

/// The alternate representation
/// D_m[beta] = (2m-1)!/h^2m * (stencil * T)[beta],
/// T[gamma] = sum_k lambda_k^(|gamma|+m-2) / E'_{2m-2}(lambda_k).
/// Defined for m >= 2 only (the m = 1 root sum is empty while D_1 is not).
Real value_via_stencil(int m, const Real& h, long beta, const RootSet& roots,
                         mpfr_prec_t precision);

/// h * (D_m * G_m)[beta] with the infinite sum truncated adaptively; the
/// result is within tail_epsilon of the exact sum for the operator as
/// stored. Equals delta[beta] mathematically.
Real convolve_dg(const DiscreteOperator& op, long beta, double tail_epsilon,
                 long radius_cap = kDefaultRadiusCap);

/// Margin M such that sum_{|gamma| > M} |D_m[gamma]| is below tail_epsilon
/// relative to the operator's row scale.
long apply_margin(const DiscreteOperator& op, double tail_epsilon);

/// (D_m * f)[beta] = sum_gamma D_m[gamma] f[beta-gamma], truncated at the
/// apply_margin radius and restricted to interior indices; approximates
/// f's 2m-th derivative on the grid. Throws WindowTooSmall if no interior
/// index survives.
DiscreteFunction apply_operator(const DiscreteOperator& op, const DiscreteFunction& f,
                                double tail_epsilon = kDefaultTailEpsilon);

}  // namespace dmop
