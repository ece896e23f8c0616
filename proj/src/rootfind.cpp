#include "dmop/rootfind.hpp"

#include <stdexcept>
#include <utility>

#include "dmop/errors.hpp"

namespace dmop {

namespace {

// Subdivision cap when a ladder bracket unexpectedly shows no sign change.
// Converts wrong-input polynomials into StructureViolation instead of a hang.
constexpr int kScanDepthCap = 12;

int sign_at(const EulerPolynomial& poly, const Real& x, mpfr_prec_t prec) {
  return poly.eval(x, prec).sign();
}

// Locates a sign-change sub-bracket inside [a, b] by successively finer
// uniform probing. The ladder guarantees one strictly interior root, so the
// endpoint signs normally already differ and this is a fallback.
std::pair<Real, Real> ensure_sign_change(const EulerPolynomial& poly, const Real& a,
                                         const Real& b, mpfr_prec_t prec) {
  const int sa = sign_at(poly, a, prec);
  const int sb = sign_at(poly, b, prec);
  if (sa * sb < 0) return {a, b};
  for (int depth = 1; depth <= kScanDepthCap; ++depth) {
    const long cells = 1L << depth;
    Real prev = a;
    int sprev = sa;
    for (long i = 1; i <= cells; ++i) {
      Real t = (i == cells) ? b : a + (b - a) * i / cells;
      const int st = (i == cells) ? sb : sign_at(poly, t, prec);
      if (sprev * st < 0) return {prev, t};
      prev = std::move(t);
      sprev = st;
    }
  }
  throw StructureViolation("no sign change inside expected root bracket");
}

}  // namespace

Real refine_root(const EulerPolynomial& poly, const Real& lo, const Real& hi,
                 mpfr_prec_t precision, double root_tolerance, int max_iterations) {
  Real a = round_to(lo, precision);
  Real b = round_to(hi, precision);
  Real fa = poly.eval(a, precision);
  Real fb = poly.eval(b, precision);
  if (fa.is_zero() && relative_residual(poly, a, precision) <= root_tolerance) return a;
  if (fb.is_zero() && relative_residual(poly, b, precision) <= root_tolerance) return b;
  if (fa.sign() * fb.sign() >= 0)
    throw std::invalid_argument("refine_root requires a sign change across the bracket");

  Real x = (a + b) / 2L;
  for (int iter = 0; iter < max_iterations; ++iter) {
    const Real fx = poly.eval(x, precision);
    const Real scale = poly.eval(abs(x), precision);
    if ((abs(fx) / scale).to_double() <= root_tolerance) return x;

    if (fx.sign() == fa.sign()) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }

    const Real dfx = poly.eval_derivative(x, precision);
    bool stepped = false;
    if (!dfx.is_zero()) {
      Real candidate = x - fx / dfx;
      if (a < candidate && candidate < b) {
        x = std::move(candidate);
        stepped = true;
      }
    }
    if (!stepped) x = (a + b) / 2L;  // Newton left the bracket, bisect
  }
  throw ConvergenceFailure("root refinement did not reach tolerance within budget");
}

RootSet isolate_inner_roots(const EulerPolynomial& poly, mpfr_prec_t precision,
                            double root_tolerance) {
  if (poly.degree < 0 || poly.coeffs.size() != static_cast<size_t>(poly.degree) + 1)
    throw std::invalid_argument("malformed polynomial");
  if (poly.degree % 2 != 0)
    throw StructureViolation("expected an even-degree polynomial E_{2m-2}");
  for (const auto& c : poly.coeffs)
    if (c <= 0) throw StructureViolation("expected strictly positive coefficients");

  const int degree = poly.degree;
  const int m = degree / 2 + 1;
  RootSet out;
  out.m = m;
  out.precision = precision;
  if (m == 1) return out;

  const Real minus_one(-1L, precision);
  const Real zero(0L, precision);

  std::vector<Real> prev_inner;  // level 1 (E_1 = x + 1): no inner roots
  for (int k = 2; k <= degree; ++k) {
    const EulerPolynomial level =
        (k == degree) ? poly : EulerPolynomial::by_recurrence(k);

    std::vector<Real> points;
    if (k % 2 == 0) points.push_back(minus_one);
    for (const auto& r : prev_inner) points.push_back(r);
    points.push_back(zero);

    std::vector<Real> inner;
    inner.reserve(points.size() - 1);
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      auto [lo, hi] = ensure_sign_change(level, points[i], points[i + 1], precision);
      inner.push_back(refine_root(level, lo, hi, precision, root_tolerance));
    }
    prev_inner = std::move(inner);
  }

  if (prev_inner.size() != static_cast<size_t>(m - 1))
    throw StructureViolation("inner root count does not match polynomial degree");
  for (size_t i = 0; i < prev_inner.size(); ++i) {
    if (!(minus_one < prev_inner[i] && prev_inner[i] < zero))
      throw StructureViolation("root escaped the open interval (-1, 0)");
    if (i > 0 && !(prev_inner[i - 1] < prev_inner[i]))
      throw StructureViolation("roots are not strictly increasing");
  }

  out.roots = std::move(prev_inner);
  out.residuals.reserve(out.roots.size());
  for (const auto& r : out.roots)
    out.residuals.push_back(relative_residual(poly, r, precision));
  return out;
}

}  // namespace dmop
