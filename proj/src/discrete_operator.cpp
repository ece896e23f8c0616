#include "dmop/discrete_operator.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "dmop/errors.hpp"
#include "dmop/euler.hpp"
#include "dmop/tails.hpp"

namespace dmop {

Stencil Stencil::of_order(int m) {
  if (m < 1) throw std::invalid_argument("stencil order m must be >= 1");
  Stencil st;
  st.m = m;
  st.taps.resize(2 * static_cast<size_t>(m) + 1);
  mpz_class binom;
  for (int k = -m; k <= m; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), 2 * static_cast<unsigned long>(m),
                 static_cast<unsigned long>(m + k));
    st.taps[static_cast<size_t>(m + k)] = ((k + m) % 2 == 0) ? binom : -binom;
  }
  return st;
}

mpz_class Stencil::tap_sum() const {
  mpz_class s = 0;
  for (const auto& t : taps) s += t;
  return s;
}

DiscreteFunction::DiscreteFunction(Real step_in, long offset_in, std::vector<Real> values_in)
    : step(std::move(step_in)), offset(offset_in), values(std::move(values_in)) {
  if (!step.is_finite() || step.sign() <= 0)
    throw std::invalid_argument("grid step must be finite and positive");
  for (const auto& v : values)
    if (!v.is_finite()) throw std::invalid_argument("samples must be finite");
}

DiscreteOperator DiscreteOperator::build(int m, const Real& h, int table_radius,
                                         mpfr_prec_t precision, double root_tolerance) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!h.is_finite() || h.sign() <= 0)
    throw std::invalid_argument("grid step h must be finite and positive");
  if (table_radius < 2) throw std::invalid_argument("table_radius must be >= 2");
  if (precision < 53) throw std::invalid_argument("precision must be >= 53 bits");

  DiscreteOperator op;
  op.m_ = m;
  op.h_ = round_to(h, precision);
  op.precision_ = precision;
  op.table_radius_ = table_radius;

  const EulerPolynomial e_low = EulerPolynomial::by_recurrence(2 * m - 2);
  op.roots_ = isolate_inner_roots(e_low, precision, root_tolerance);

  const EulerPolynomial e_high = EulerPolynomial::by_recurrence(2 * m - 1);
  op.amplitudes_.reserve(op.roots_.roots.size());
  for (const auto& lambda : op.roots_.roots) {
    const Real numer = pow_ui(1L - lambda, 2 * static_cast<unsigned long>(m) + 1);
    op.amplitudes_.push_back(numer / e_high.eval(lambda, precision));
  }

  op.factor_ = Real(factorial(2 * static_cast<unsigned long>(m) - 1), precision) /
               pow_ui(op.h_, 2 * static_cast<unsigned long>(m));

  // Table of c[beta] + sum_k A_k lambda_k^(|beta|-1), scaled by the factor.
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, 2 * static_cast<unsigned long>(m) - 1);
  op.table_.reserve(static_cast<size_t>(table_radius) + 1);
  for (int beta = 0; beta <= table_radius; ++beta) {
    Real core(0L, precision);
    if (beta == 0) {
      core = Real(mpz_class(-two_pow), precision);
      for (size_t k = 0; k < op.amplitudes_.size(); ++k)
        core += op.amplitudes_[k] / op.roots_.roots[k];
    } else if (beta == 1) {
      core = Real(1L, precision);
      for (const auto& a : op.amplitudes_) core += a;
    } else {
      for (size_t k = 0; k < op.amplitudes_.size(); ++k)
        core += op.amplitudes_[k] *
                pow_ui(op.roots_.roots[k], static_cast<unsigned long>(beta) - 1);
    }
    op.table_.push_back(op.factor_ * core);
  }

  if (m == 1) {
    op.decay_ratio_ = 0.0;
    op.ln_tail_coef_ = -INFINITY;
  } else {
    // roots are ascending in (-1, 0): the first is the largest in modulus
    op.decay_ratio_ = abs(op.roots_.roots.front()).to_double();
    Real sum_abs(0L, precision);
    for (const auto& a : op.amplitudes_) sum_abs += abs(a);
    op.ln_tail_coef_ = op.factor_.log_abs() + sum_abs.log_abs();
  }

  // Upper estimate of sum_beta |D[beta]|, used only as a reporting scale.
  Real row = abs(op.table_[0]) + 2L * abs(op.table_[1]);
  for (size_t k = 0; k < op.amplitudes_.size(); ++k) {
    const Real al = abs(op.roots_.roots[k]);
    row += 2L * op.factor_ * abs(op.amplitudes_[k]) * al / (1L - al);
  }
  op.ln_row_scale_ = row.log_abs();
  return op;
}

Real DiscreteOperator::value(long beta) const {
  const long b = beta < 0 ? -beta : beta;
  if (b <= table_radius_) return table_[static_cast<size_t>(b)];
  Real core(0L, precision_);
  for (size_t k = 0; k < amplitudes_.size(); ++k)
    core += amplitudes_[k] * pow_ui(roots_.roots[k], static_cast<unsigned long>(b) - 1);
  return factor_ * core;
}

Real g_value(int m, const Real& h, long beta, mpfr_prec_t precision) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!h.is_finite() || h.sign() <= 0)
    throw std::invalid_argument("grid step h must be finite and positive");
  if (beta == 0) return Real(0L, precision);
  // (h beta)^(2m-1) sign(h beta) = |h beta|^(2m-1)
  const Real x = round_to(h, precision) * Real(beta < 0 ? -beta : beta, precision);
  const Real numer = pow_ui(x, 2 * static_cast<unsigned long>(m) - 1);
  return numer / Real(mpz_class(2 * factorial(2 * static_cast<unsigned long>(m) - 1)), precision);
}

Real value_via_stencil(int m, const Real& h, long beta, const RootSet& roots,
                         mpfr_prec_t precision) {
  if (m < 2)
    throw std::invalid_argument(
        "the stencil representation is defined for m >= 2 (empty root sum at m = 1)");
  if (roots.m != m) throw std::invalid_argument("root set does not match m");

  const EulerPolynomial e_low = EulerPolynomial::by_recurrence(2 * m - 2);
  std::vector<Real> deriv_at_root;
  deriv_at_root.reserve(roots.roots.size());
  for (const auto& lambda : roots.roots)
    deriv_at_root.push_back(e_low.eval_derivative(lambda, precision));

  const auto pre_stencil = [&](long gamma) {
    const unsigned long e =
        static_cast<unsigned long>((gamma < 0 ? -gamma : gamma) + m - 2);
    Real t(0L, precision);
    for (size_t k = 0; k < roots.roots.size(); ++k)
      t += pow_ui(roots.roots[k], e) / deriv_at_root[k];
    return t;
  };

  const Stencil st = Stencil::of_order(m);
  Real conv(0L, precision);
  for (int j = -m; j <= m; ++j)
    conv += Real(st.taps[static_cast<size_t>(j + m)], precision) * pre_stencil(beta - j);

  const Real factor = Real(factorial(2 * static_cast<unsigned long>(m) - 1), precision) /
                      pow_ui(round_to(h, precision), 2 * static_cast<unsigned long>(m));
  return factor * conv;
}

Real convolve_dg(const DiscreteOperator& op, long beta, double tail_epsilon,
                 long radius_cap) {
  if (!(tail_epsilon > 0)) throw std::invalid_argument("tail_epsilon must be positive");
  const int m = op.order_m();
  const mpfr_prec_t prec = op.precision();
  const Real& h = op.step();

  long radius = 1;
  mpfr_prec_t wp = prec;
  if (m > 1) {
    // |D[gamma]| <= exp(ln_tail_coef) q^(gamma-1),
    // |G[beta -+ gamma]| <= (h (gamma + |beta|))^(2m-1) / (2 (2m-1)!)
    detail::TailModel model;
    model.ln_coef =
        op.ln_tail_coefficient() - std::log(2.0) - std::lgamma(2.0 * m);  // ln (2m-1)!
    model.q = op.decay_ratio();
    model.ln_step = h.log_abs();
    model.power = 2 * m - 1;
    model.shift = beta < 0 ? -beta : beta;

    const double ln_h = h.log_abs();
    const double ln_target = std::log(tail_epsilon) - std::log(2.0) - ln_h;
    radius = model.radius_for(ln_target, 1, radius_cap);
    wp = detail::elevated_precision(prec, model.ln_peak() + ln_h, std::log(tail_epsilon));
  }

  Real acc(0L, wp);
  acc += op.value(0) * g_value(m, h, beta, wp);
  for (long gamma = 1; gamma <= radius; ++gamma) {
    const Real d = op.value(gamma);
    acc += d * (g_value(m, h, beta - gamma, wp) + g_value(m, h, beta + gamma, wp));
  }
  return round_to(round_to(h, wp) * acc, prec);
}

long apply_margin(const DiscreteOperator& op, double tail_epsilon) {
  if (!(tail_epsilon > 0)) throw std::invalid_argument("tail_epsilon must be positive");
  if (op.order_m() == 1) return 1;  // exact support
  detail::TailModel model;
  model.ln_coef = op.ln_tail_coefficient() + std::log(2.0);
  model.q = op.decay_ratio();
  const double ln_target = std::log(tail_epsilon) + op.ln_row_scale();
  return model.radius_for(ln_target, 1, kDefaultRadiusCap);
}

DiscreteFunction apply_operator(const DiscreteOperator& op, const DiscreteFunction& f,
                                double tail_epsilon) {
  if (!(f.step == op.step()))
    throw std::invalid_argument("sample grid step does not match the operator's");
  const long margin = apply_margin(op, tail_epsilon);
  const long n = static_cast<long>(f.values.size());
  if (n < 2 * margin + 1)
    throw WindowTooSmall("need at least " + std::to_string(2 * margin + 1) +
                         " samples (margin " + std::to_string(margin) + " per side)");

  const mpfr_prec_t wp = op.precision();
  std::vector<Real> weights;
  weights.reserve(static_cast<size_t>(margin) + 1);
  for (long g = 0; g <= margin; ++g) weights.push_back(op.value(g));

  DiscreteFunction out;
  out.step = f.step;
  out.offset = f.offset + margin;
  out.values.reserve(static_cast<size_t>(n - 2 * margin));
  for (long i = margin; i < n - margin; ++i) {
    Real acc = weights[0] * f.values[static_cast<size_t>(i)];
    acc = round_to(acc, wp);
    for (long g = 1; g <= margin; ++g)
      acc += weights[static_cast<size_t>(g)] *
             (f.values[static_cast<size_t>(i - g)] + f.values[static_cast<size_t>(i + g)]);
    out.values.push_back(std::move(acc));
  }
  return out;
}

}  // namespace dmop
