#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "dmop/discrete_operator.hpp"
#include "dmop/real.hpp"

namespace dmop {

struct CheckResult {
  std::string name;
  std::string params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;  // residual <= tolerance, by construction
};

struct VerificationReport {
  int m = 1;
  double h = 1.0;
  mpfr_prec_t precision = kDefaultPrecision;
  std::vector<CheckResult> checks;

  void add(std::string name, std::string params, double residual, double tolerance);
  void merge(const VerificationReport& other);
  bool all_passed() const;
  double max_residual() const;
};

/// Exact Bernoulli number B_index (B_1 = -1/2 convention), by the
/// recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0.
mpq_class bernoulli(unsigned index);

/// zeta(s) for integer s >= 2 through the alternating series
/// eta(s) = sum (-1)^(k-1) k^-s with Cohen-Rodriguez Villegas-Zagier
/// acceleration; independent of Bernoulli numbers.
Real zeta_int(unsigned s, mpfr_prec_t precision);

struct MomentTolerances {
  double zero_abs = 1e-10;  // S_k = 0 rows
  double main_rel = 1e-8;   // S_2m = (2m)!
  double high_rel = 1e-6;   // S_4m = h^2m (4m)! B_2m / (2m)!
};

/// Moment sums S_k = sum_beta D_m[beta] (h beta)^k for k = 0..4m.
/// Odd k cancel exactly through +-beta pairing and are asserted without
/// tolerance; even k are accumulated at an internally elevated precision
/// sized from the peak-term magnitude (the sums cancel far below their
/// largest terms).
VerificationReport check_moments(int m, const Real& h, mpfr_prec_t precision,
                                 const MomentTolerances& tol = {});

struct SymbolCheck {
  double relative_residual = 0.0;
  double imag_abs = 0.0;
  double direct = 0.0;
  double closed = 0.0;
  bool lattice = false;  // p h integral: both sides vanish identically
};

/// Closed trigonometric form of sum_beta D_m[beta] exp(2 pi i h p beta):
/// (-1)^m 2^2m (2m-1)! h^-2m sin^2m(pi h p) /
/// (2 sum_{k=0}^{m-2} a_k cos(2 pi h p (m-1-k)) + a_{m-1}),
/// with a_k the coefficients of E_{2m-2}.
Real symbol_closed_form(int m, const Real& h, const Real& p, mpfr_prec_t precision);

/// Truncated direct sum versus the closed form at one frequency.
SymbolCheck check_symbol(int m, const Real& h, const Real& p, mpfr_prec_t precision,
                         double relative_tolerance = 1e-8);

/// Fixed-seed sweep of `count` frequencies drawn from (0, 1/(2h)).
VerificationReport check_symbols(int m, const Real& h, mpfr_prec_t precision,
                                 int count = 10, std::uint64_t seed = 0x5eed5eedULL,
                                 double relative_tolerance = 1e-8,
                                 double imag_tolerance = 1e-12);

/// h (D_m * G_m)[beta] = delta[beta] for |beta| <= beta_max.
VerificationReport check_inverse(int m, const Real& h, int beta_max,
                                 double tail_epsilon = kDefaultTailEpsilon,
                                 double tolerance = 1e-10,
                                 mpfr_prec_t precision = kDefaultPrecision);

/// Direct construction vs the stencil representation, m >= 2.
VerificationReport check_representations(int m, const Real& h, int beta_max,
                                         double tolerance, mpfr_prec_t precision);

/// (1-l)^(2m+1)/E_{2m-1}(l) vs (1-l)^2m/(l E'_{2m-2}(l)) at every root.
VerificationReport check_amplitude_identity(int m, mpfr_prec_t precision,
                                            double tolerance = 1e-25);

/// B_2m against zeta(2m) = (-1)^(m-1) (2 pi)^2m B_2m / (2 (2m)!).
VerificationReport check_bernoulli_zeta(unsigned max_index = 16, double tolerance = 1e-12);

struct VerifyOptions {
  int beta_max = 20;
  int symbol_count = 10;
  std::uint64_t symbol_seed = 0x5eed5eedULL;
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double high_rel_tol = 1e-6;
  double representation_tol = 1e-20;
  double amplitude_tol = 1e-25;
  double imag_tol = 1e-12;
  double tail_epsilon = kDefaultTailEpsilon;
};

/// The whole identity suite for one (m, h): moments, convolution inverse,
/// symbol sweep, representation equality (m >= 2), amplitude identity,
/// Bernoulli-zeta consistency.
VerificationReport verify_suite(int m, const Real& h, mpfr_prec_t precision,
                                const VerifyOptions& options = {});

}  // namespace dmop
