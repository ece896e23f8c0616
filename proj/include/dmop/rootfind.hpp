#pragma once

#include <vector>

#include "dmop/errors.hpp"
#include "dmop/euler.hpp"
#include "dmop/real.hpp"

namespace dmop {

/// The m-1 roots of E_{2m-2} inside (-1, 0), ascending. The outer roots
/// are their reciprocals and are never stored. Immutable after
/// construction.
struct RootSet {
  int m = 1;
  mpfr_prec_t precision = kDefaultPrecision;
  std::vector<Real> roots;        // strictly increasing, all in (-1, 0)
  std::vector<double> residuals;  // |E(root)| / E(|root|) per root
};

/// Finds every root of `poly` (which must be E_{2m-2}: even degree,
/// positive palindromic coefficients) in the open interval (-1, 0).
///
/// Brackets come from an interlacing ladder: the recurrence gives
/// E_k(r) = r(1-r)E'_{k-1}(r) at roots r of E_{k-1}, which alternates sign
/// across consecutive roots, so each level's roots together with {-1, 0}
/// bracket the next level's. Each bracket is bisected and then polished by
/// bracket-guarded Newton steps against the supplied polynomial.
///
/// Throws StructureViolation if the expected bracket structure is absent
/// (wrong input polynomial) and ConvergenceFailure if refinement stalls.
RootSet isolate_inner_roots(const EulerPolynomial& poly, mpfr_prec_t precision,
                            double root_tolerance = 1e-30);

/// Refines the single simple root inside [lo, hi]; requires a sign change
/// across the bracket. Tolerance is on the relative residual
/// |E(x)| / E(|x|). Throws ConvergenceFailure when the budget runs out.
Real refine_root(const EulerPolynomial& poly, const Real& lo, const Real& hi,
                 mpfr_prec_t precision, double root_tolerance = 1e-30,
                 int max_iterations = 256);

}  // namespace dmop
