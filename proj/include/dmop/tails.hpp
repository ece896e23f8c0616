#pragma once

#include <cmath>

#include "dmop/errors.hpp"

namespace dmop::detail {

/// Bound model for the absolute terms of a one-sided lattice tail:
///   |t(beta)| <= exp(ln_coef) * q^(beta-1) * (step*(beta+shift))^power
/// for beta >= 1, with 0 <= q < 1. All bookkeeping happens in log space,
/// so double arithmetic is safe far outside double range.
struct TailModel {
  double ln_coef = 0.0;
  double q = 0.0;
  double ln_step = 0.0;
  int power = 0;
  long shift = 0;

  double ln_term(long beta) const {
    if (q == 0.0 && beta > 1) return -INFINITY;
    double v = ln_coef;
    if (beta > 1) v += static_cast<double>(beta - 1) * std::log(q);
    if (power != 0)
      v += power * (ln_step + std::log(static_cast<double>(beta + shift)));
    return v;
  }

  /// ln of a rigorous bound for sum_{beta > radius} |t(beta)|: the terms
  /// beyond `radius` are dominated by a geometric series with ratio
  /// r = q * ((radius+2+shift)/(radius+1+shift))^power once r < 1.
  double ln_tail(long radius) const {
    if (q == 0.0) return -INFINITY;
    const double grow =
        static_cast<double>(radius + 2 + shift) / static_cast<double>(radius + 1 + shift);
    const double ratio = q * std::pow(grow, power);
    if (ratio >= 1.0) return INFINITY;
    return ln_term(radius + 1) - std::log1p(-ratio);
  }

  /// Smallest radius >= min_radius whose tail bound is <= exp(ln_eps).
  long radius_for(double ln_eps, long min_radius, long cap) const {
    for (long r = min_radius; r <= cap; ++r)
      if (ln_tail(r) <= ln_eps) return r;
    throw NonConvergent("tail bound cannot reach the requested epsilon within the radius cap");
  }

  /// ln of max_beta |t(beta)| over beta >= 1.
  double ln_peak() const {
    if (q == 0.0 || power == 0) return ln_term(1);
    const double beta_star = static_cast<double>(power) / std::log(1.0 / q) -
                             static_cast<double>(shift);
    double best = ln_term(1);
    for (long b : {static_cast<long>(std::floor(beta_star)),
                   static_cast<long>(std::ceil(beta_star))})
      if (b >= 1) best = std::max(best, ln_term(b));
    return best;
  }
};

/// Working precision that keeps accumulated rounding noise of a sum with
/// peak term exp(ln_peak) at least ~2^-40 below exp(ln_target).
inline mpfr_prec_t elevated_precision(mpfr_prec_t base, double ln_peak, double ln_target) {
  const double need_bits = (ln_peak - ln_target) / std::log(2.0) + 96.0;
  if (!(need_bits > static_cast<double>(base)))
    return base;
  if (need_bits > 16384.0)
    throw NonConvergent("required working precision exceeds the sanity cap");
  return static_cast<mpfr_prec_t>(need_bits);
}

}  // namespace dmop::detail
