#include "dmop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "dmop/errors.hpp"
#include "dmop/euler.hpp"
#include "dmop/tails.hpp"

namespace dmop {

namespace {

// Internal working-precision ceiling for elevated rebuilds; keeps the
// root tolerance representable as a double with headroom.
constexpr mpfr_prec_t kMaxInternalPrecision = 960;

std::string fmt(const char* format, ...) {
  char buf[128];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

mpfr_prec_t clamp_precision(mpfr_prec_t wanted) {
  return wanted > kMaxInternalPrecision ? kMaxInternalPrecision : wanted;
}

double internal_root_tolerance(mpfr_prec_t wp) {
  return std::min(1e-30, std::max(std::ldexp(1.0, 40 - static_cast<int>(wp)), 1e-280));
}

DiscreteOperator build_at(int m, const Real& h, int radius, mpfr_prec_t wp) {
  return DiscreteOperator::build(m, h, std::max(2, radius), wp,
                                 internal_root_tolerance(wp));
}

}  // namespace

void VerificationReport::add(std::string name, std::string params, double residual,
                             double tolerance) {
  checks.push_back(
      {std::move(name), std::move(params), residual, tolerance, residual <= tolerance});
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

double VerificationReport::max_residual() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.residual);
  return worst;
}

mpq_class bernoulli(unsigned index) {
  std::vector<mpq_class> b(index + 1);
  b[0] = 1;
  mpz_class binom;
  for (unsigned n = 1; n <= index; ++n) {
    mpq_class acc = 0;
    for (unsigned j = 0; j < n; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), n + 1, j);
      acc += binom * b[j];
    }
    b[n] = -acc / (n + 1);
    b[n].canonicalize();
  }
  return b[index];
}

Real zeta_int(unsigned s, mpfr_prec_t precision) {
  if (s < 2) throw std::invalid_argument("zeta_int needs s >= 2");
  const mpfr_prec_t wp = precision + 32;
  // Alternating-series acceleration: error ~ (3+sqrt(8))^-n.
  const long n = static_cast<long>(static_cast<double>(wp) * std::log(2.0) /
                                   std::log(3.0 + std::sqrt(8.0))) +
                 10;
  const Real root8 = sqrt_ui(8, wp);
  Real d = pow_ui(Real(3L, wp) + root8, static_cast<unsigned long>(n));
  d = (d + 1L / d) / 2L;

  Real b(-1L, wp);
  Real c = -d;
  Real sum(0L, wp);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    sum += c / pow_ui(Real(k + 1, wp), s);
    b *= 2 * (k + n);
    b *= (k - n);
    b /= (2 * k + 1);
    b /= (k + 1);
  }
  const Real eta = sum / d;
  // zeta = eta / (1 - 2^(1-s))
  Real denom(1L, wp);
  denom -= 1L / pow_ui(Real(2L, wp), s - 1);
  return round_to(eta / denom, precision);
}

VerificationReport check_moments(int m, const Real& h, mpfr_prec_t precision,
                                 const MomentTolerances& tol) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  VerificationReport report;
  report.m = m;
  report.h = h.to_double();
  report.precision = precision;

  const double ln_h = h.log_abs();
  const double ln_target = std::log(tol.zero_abs) - std::log(8.0);

  mpfr_prec_t wp = precision;
  std::vector<long> radius(static_cast<size_t>(4 * m) + 1, 1);
  if (m > 1) {
    const DiscreteOperator scout = build_at(m, h, 2, 128);
    detail::TailModel worst{scout.ln_tail_coefficient() + std::log(2.0),
                            scout.decay_ratio(), ln_h, 4 * m, 0};
    wp = clamp_precision(
        detail::elevated_precision(precision, worst.ln_peak(), ln_target));
    for (int k = 0; k <= 4 * m; k += 2) {
      detail::TailModel model{scout.ln_tail_coefficient() + std::log(2.0),
                              scout.decay_ratio(), ln_h, k, 0};
      radius[static_cast<size_t>(k)] = model.radius_for(ln_target, 1, kDefaultRadiusCap);
    }
  }

  const long max_radius = *std::max_element(radius.begin(), radius.end());
  const DiscreteOperator op =
      build_at(m, h, static_cast<int>(std::min<long>(max_radius, 4096)), wp);
  const Real hw = round_to(h, wp);

  for (int k = 0; k <= 4 * m; ++k) {
    if (k % 2 == 1) {
      // +-beta pairs cancel termwise: exact, asserted with zero tolerance
      report.add("moment", fmt("k=%d", k), 0.0, 0.0);
      continue;
    }
    Real sum = (k == 0) ? round_to(op.value(0), wp) : Real(0L, wp);
    for (long beta = 1; beta <= radius[static_cast<size_t>(k)]; ++beta) {
      Real term = op.value(beta);
      if (k > 0) term *= pow_ui(hw * Real(beta, wp), static_cast<unsigned long>(k));
      sum += 2L * term;
    }

    double residual, tolerance;
    if (k == 2 * m) {
      const Real expected(factorial(2 * static_cast<unsigned long>(m)), wp);
      residual = (abs(sum - expected) / expected).to_double();
      tolerance = tol.main_rel;
    } else if (k == 4 * m) {
      mpq_class coeff = bernoulli(2 * static_cast<unsigned>(m));
      coeff *= factorial(4 * static_cast<unsigned long>(m));
      coeff /= factorial(2 * static_cast<unsigned long>(m));
      const Real expected =
          Real(coeff, wp) * pow_ui(hw, 2 * static_cast<unsigned long>(m));
      residual = (abs(sum - expected) / abs(expected)).to_double();
      tolerance = tol.high_rel;
    } else {
      residual = abs(sum).to_double();
      tolerance = tol.zero_abs;
    }
    report.add("moment", fmt("k=%d", k), residual, tolerance);
  }
  return report;
}

Real symbol_closed_form(int m, const Real& h, const Real& p, mpfr_prec_t precision) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const mpfr_prec_t wp = std::max({precision, h.precision(), p.precision()});
  const EulerPolynomial e_low = EulerPolynomial::by_recurrence(2 * m - 2);
  const Real hp = round_to(h, wp) * round_to(p, wp);
  const Real pi_hp = pi(wp) * hp;

  mpz_class lead = factorial(2 * static_cast<unsigned long>(m) - 1);
  lead <<= 2 * m;  // 2^2m (2m-1)!
  Real numer = Real(lead, wp) * pow_ui(sin(pi_hp), 2 * static_cast<unsigned long>(m)) /
               pow_ui(round_to(h, wp), 2 * static_cast<unsigned long>(m));
  if (m % 2 == 1) numer = -numer;

  Real denom(e_low.coeffs[static_cast<size_t>(m) - 1], wp);
  for (int k = 0; k <= m - 2; ++k)
    denom += 2L * Real(e_low.coeffs[static_cast<size_t>(k)], wp) *
             cos(2L * pi_hp * Real(m - 1 - k, wp));
  return round_to(numer / denom, precision);
}

SymbolCheck check_symbol(int m, const Real& h, const Real& p, mpfr_prec_t precision,
                         double relative_tolerance) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  SymbolCheck out;

  if ((round_to(h, precision) * round_to(p, precision)).is_integer()) {
    // Lattice frequency: sin factor vanishes and the direct sum is the
    // zeroth moment; both sides are exactly zero.
    out.lattice = true;
    return out;
  }

  const Real closed = symbol_closed_form(m, h, p, precision);
  out.closed = closed.to_double();

  long radius = 1;
  mpfr_prec_t wp = precision;
  if (m > 1) {
    const DiscreteOperator scout = build_at(m, h, 2, 128);
    const double ln_target =
        closed.log_abs() + std::log(relative_tolerance) - std::log(8.0);
    detail::TailModel model{scout.ln_tail_coefficient() + std::log(2.0),
                            scout.decay_ratio(), 0.0, 0, 0};
    radius = model.radius_for(ln_target, 1, kDefaultRadiusCap);
    wp = clamp_precision(
        detail::elevated_precision(precision, scout.ln_row_scale(), ln_target));
  }

  const DiscreteOperator op =
      build_at(m, h, static_cast<int>(std::min<long>(radius, 4096)), wp);
  const Real theta = 2L * pi(wp) * round_to(h, wp) * round_to(p, wp);
  Real re(0L, wp), im(0L, wp), s(wp), c(wp);
  for (long beta = -radius; beta <= radius; ++beta) {
    const Real angle = theta * Real(beta, wp);
    mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
    const Real v = op.value(beta);
    re += v * c;
    im += v * s;
  }

  out.direct = re.to_double();
  out.imag_abs = abs(im).to_double();
  out.relative_residual = (abs(re - closed) / abs(closed)).to_double();
  return out;
}

VerificationReport check_symbols(int m, const Real& h, mpfr_prec_t precision, int count,
                                 std::uint64_t seed, double relative_tolerance,
                                 double imag_tolerance) {
  VerificationReport report;
  report.m = m;
  report.h = h.to_double();
  report.precision = precision;

  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(m)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    // keep frequencies comfortably inside (0, 1/(2h))
    const double u = 0.05 + 0.90 * unit(rng);
    const Real p = Real(u, precision) / (2L * round_to(h, precision));
    const SymbolCheck sc = check_symbol(m, h, p, precision, relative_tolerance);
    report.add("symbol", fmt("p=%.10g", p.to_double()), sc.relative_residual,
               relative_tolerance);
    report.add("symbol_imag", fmt("p=%.10g", p.to_double()), sc.imag_abs, imag_tolerance);
  }
  return report;
}

VerificationReport check_inverse(int m, const Real& h, int beta_max, double tail_epsilon,
                                 double tolerance, mpfr_prec_t precision) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (beta_max < 0) throw std::invalid_argument("beta_max must be >= 0");
  VerificationReport report;
  report.m = m;
  report.h = h.to_double();
  report.precision = precision;

  mpfr_prec_t wp = precision;
  if (m > 1) {
    const DiscreteOperator scout = build_at(m, h, 2, 128);
    detail::TailModel model{scout.ln_tail_coefficient() - std::log(2.0) -
                                std::lgamma(2.0 * m),
                            scout.decay_ratio(), h.log_abs(), 2 * m - 1, beta_max};
    const double ln_target =
        std::log(std::min(tail_epsilon, tolerance)) - std::log(8.0);
    wp = clamp_precision(detail::elevated_precision(
        precision, model.ln_peak() + h.log_abs(), ln_target));
  }
  const DiscreteOperator op = build_at(m, h, 64, wp);

  for (int beta = 0; beta <= beta_max; ++beta) {
    const Real target(beta == 0 ? 1L : 0L, wp);
    double residual = abs(convolve_dg(op, beta, tail_epsilon) - target).to_double();
    if (beta > 0)
      residual = std::max(
          residual, abs(convolve_dg(op, -beta, tail_epsilon) - target).to_double());
    report.add("inverse", fmt("beta=%d", beta), residual, tolerance);
  }
  return report;
}

VerificationReport check_representations(int m, const Real& h, int beta_max,
                                         double tolerance, mpfr_prec_t precision) {
  if (m < 2) throw std::invalid_argument("representation check needs m >= 2");
  VerificationReport report;
  report.m = m;
  report.h = h.to_double();
  report.precision = precision;

  const DiscreteOperator op = build_at(m, h, beta_max, precision);
  // ulp-scale floor keeps the deviation relative even where D_m crosses zero
  const double ln2 = std::log(2.0);
  const double floor_ln =
      op.scale_factor().log_abs() + (1.0 - static_cast<double>(precision)) * ln2;
  const double floor_abs = std::exp(floor_ln);

  double worst = 0.0;
  for (int beta = 0; beta <= beta_max; ++beta) {
    const Real direct = op.value(beta);
    const Real stencil = value_via_stencil(m, h, beta, op.roots(), precision);
    const double dev = abs(direct - stencil).to_double() /
                       (abs(direct).to_double() + floor_abs);
    worst = std::max(worst, dev);
  }
  report.add("representation_max", fmt("|beta|<=%d", beta_max), worst, tolerance);
  return report;
}

VerificationReport check_amplitude_identity(int m, mpfr_prec_t precision,
                                            double tolerance) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  VerificationReport report;
  report.m = m;
  report.precision = precision;

  if (m == 1) {
    report.add("amplitude", "no roots", 0.0, tolerance);
    return report;
  }
  const EulerPolynomial e_low = EulerPolynomial::by_recurrence(2 * m - 2);
  const EulerPolynomial e_high = EulerPolynomial::by_recurrence(2 * m - 1);
  const RootSet roots =
      isolate_inner_roots(e_low, precision, internal_root_tolerance(precision));
  for (size_t k = 0; k < roots.roots.size(); ++k) {
    const Real& lambda = roots.roots[k];
    const Real via_high = pow_ui(1L - lambda, 2 * static_cast<unsigned long>(m) + 1) /
                          e_high.eval(lambda, precision);
    const Real via_derivative =
        pow_ui(1L - lambda, 2 * static_cast<unsigned long>(m)) /
        (lambda * e_low.eval_derivative(lambda, precision));
    const double rel = (abs(via_high - via_derivative) / abs(via_high)).to_double();
    report.add("amplitude", fmt("k=%zu", k + 1), rel, tolerance);
  }
  return report;
}

VerificationReport check_bernoulli_zeta(unsigned max_index, double tolerance) {
  VerificationReport report;
  const mpfr_prec_t wp = 256;
  for (unsigned n = 2; n <= max_index; n += 2) {
    const Real lhs = zeta_int(n, wp);
    Real rhs = pow_ui(2L * pi(wp), n) * Real(bernoulli(n), wp) /
               Real(mpz_class(2 * factorial(n)), wp);
    if ((n / 2) % 2 == 0) rhs = -rhs;  // (-1)^(m-1) with n = 2m
    const double rel = (abs(lhs - rhs) / lhs).to_double();
    report.add("bernoulli_zeta", fmt("2m=%u", n), rel, tolerance);
  }
  return report;
}

VerificationReport verify_suite(int m, const Real& h, mpfr_prec_t precision,
                                const VerifyOptions& options) {
  VerificationReport report;
  report.m = m;
  report.h = h.to_double();
  report.precision = precision;

  report.merge(check_moments(
      m, h, precision,
      MomentTolerances{options.abs_tol, options.rel_tol, options.high_rel_tol}));
  report.merge(check_inverse(m, h, options.beta_max, options.tail_epsilon,
                             options.abs_tol, precision));
  report.merge(check_symbols(m, h, precision, options.symbol_count, options.symbol_seed,
                             options.rel_tol, options.imag_tol));
  if (m >= 2)
    report.merge(check_representations(m, h, options.beta_max,
                                       options.representation_tol, precision));
  report.merge(check_amplitude_identity(m, precision, options.amplitude_tol));
  report.merge(check_bernoulli_zeta(2 * static_cast<unsigned>(m), 1e-12));
  return report;
}

}  // namespace dmop
