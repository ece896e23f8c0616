#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dmop/discrete_operator.hpp"
#include "dmop/errors.hpp"
#include "dmop/euler.hpp"
#include "dmop/verify.hpp"

namespace py = pybind11;

namespace {

using dmop::Real;

py::object to_py_int(const mpz_class& z) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object to_fraction(const mpq_class& q) {
  const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py_int(q.get_num()), to_py_int(q.get_den()));
}

// Accepts float or decimal string; strings keep values exact in binary
// where the literal allows it.
Real real_from(const py::object& value, mpfr_prec_t prec) {
  if (py::isinstance<py::str>(value)) return Real(value.cast<std::string>(), prec);
  return Real(value.cast<double>(), prec);
}

py::dict report_to_dict(const dmop::VerificationReport& report) {
  py::list checks;
  for (const auto& c : report.checks) {
    py::dict d;
    d["name"] = c.name;
    d["params"] = c.params;
    d["residual"] = c.residual;
    d["tolerance"] = c.tolerance;
    d["passed"] = c.passed;
    checks.append(d);
  }
  py::dict out;
  out["m"] = report.m;
  out["h"] = report.h;
  out["precision"] = static_cast<long>(report.precision);
  out["passed"] = report.all_passed();
  out["checks"] = checks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Discrete analogue of d^2m/dx^2m: exact construction and verification";

  py::register_exception<dmop::ConvergenceFailure>(mod, "ConvergenceFailure");
  py::register_exception<dmop::StructureViolation>(mod, "StructureViolation");
  py::register_exception<dmop::NonConvergent>(mod, "NonConvergent");
  py::register_exception<dmop::WindowTooSmall>(mod, "WindowTooSmall");

  mod.def(
      "euler_coefficients",
      [](int k, bool explicit_sum) {
        const auto poly = explicit_sum ? dmop::EulerPolynomial::by_explicit_sum(k)
                                       : dmop::EulerPolynomial::by_recurrence(k);
        py::list out;
        for (const auto& c : poly.coeffs) out.append(to_py_int(c));
        return out;
      },
      py::arg("k"), py::arg("explicit_sum") = false,
      "Exact coefficients of E_k, ascending powers");

  mod.def(
      "euler_eval",
      [](int k, double x, long precision) {
        const auto poly = dmop::EulerPolynomial::by_recurrence(k);
        return poly.eval(Real(x, precision), precision).to_double();
      },
      py::arg("k"), py::arg("x"), py::arg("precision") = 128);

  mod.def(
      "inner_roots",
      [](int m, long precision, double tolerance) {
        const auto poly = dmop::EulerPolynomial::by_recurrence(2 * m - 2);
        const auto rs = dmop::isolate_inner_roots(poly, precision, tolerance);
        std::vector<double> roots, residuals;
        for (const auto& r : rs.roots) roots.push_back(r.to_double());
        return py::make_tuple(roots, rs.residuals);
      },
      py::arg("m"), py::arg("precision") = 128, py::arg("tolerance") = 1e-30,
      "(roots, residuals) of E_{2m-2} inside (-1, 0), ascending");

  mod.def(
      "stencil",
      [](int m) {
        py::list out;
        for (const auto& t : dmop::Stencil::of_order(m).taps) out.append(to_py_int(t));
        return out;
      },
      py::arg("m"), "Alternating binomial taps of the order-2m symmetric difference");

  mod.def(
      "g_value",
      [](int m, const py::object& h, long beta, long precision) {
        return dmop::g_value(m, real_from(h, precision), beta, precision).to_double();
      },
      py::arg("m"), py::arg("h"), py::arg("beta"), py::arg("precision") = 128);

  mod.def("bernoulli", [](unsigned n) { return to_fraction(dmop::bernoulli(n)); },
          py::arg("n"), "Exact Bernoulli number as fractions.Fraction");

  mod.def(
      "zeta",
      [](unsigned s, long precision) { return dmop::zeta_int(s, precision).to_double(); },
      py::arg("s"), py::arg("precision") = 128);

  mod.def(
      "symbol_closed",
      [](int m, const py::object& h, const py::object& p, long precision) {
        return dmop::symbol_closed_form(m, real_from(h, precision),
                                        real_from(p, precision), precision)
            .to_double();
      },
      py::arg("m"), py::arg("h"), py::arg("p"), py::arg("precision") = 128);

  mod.def(
      "check_symbol",
      [](int m, const py::object& h, const py::object& p, long precision) {
        const auto sc = dmop::check_symbol(m, real_from(h, precision),
                                           real_from(p, precision), precision);
        py::dict d;
        d["direct"] = sc.direct;
        d["closed"] = sc.closed;
        d["residual"] = sc.relative_residual;
        d["imag"] = sc.imag_abs;
        d["lattice"] = sc.lattice;
        return d;
      },
      py::arg("m"), py::arg("h"), py::arg("p"), py::arg("precision") = 128);

  mod.def(
      "verify",
      [](int m, const py::object& h, long precision) {
        return report_to_dict(
            dmop::verify_suite(m, real_from(h, precision), precision));
      },
      py::arg("m"), py::arg("h") = 1.0, py::arg("precision") = 128,
      "Full identity suite; see result['passed'] and result['checks']");

  py::class_<dmop::DiscreteOperator>(mod, "Operator",
                                     "D_m on a lattice of step h, extendable to any index")
      .def(py::init([](int m, const py::object& h, int radius, long precision) {
             return dmop::DiscreteOperator::build(m, real_from(h, precision), radius,
                                                  precision);
           }),
           py::arg("m"), py::arg("h") = 1.0, py::arg("radius") = 16,
           py::arg("precision") = 128)
      .def_property_readonly("m", &dmop::DiscreteOperator::order_m)
      .def_property_readonly("h",
                             [](const dmop::DiscreteOperator& op) {
                               return op.step().to_double();
                             })
      .def_property_readonly("precision",
                             [](const dmop::DiscreteOperator& op) {
                               return static_cast<long>(op.precision());
                             })
      .def_property_readonly("lambdas",
                             [](const dmop::DiscreteOperator& op) {
                               std::vector<double> out;
                               for (const auto& r : op.roots().roots)
                                 out.push_back(r.to_double());
                               return out;
                             })
      .def_property_readonly("amplitudes",
                             [](const dmop::DiscreteOperator& op) {
                               std::vector<double> out;
                               for (const auto& a : op.amplitudes())
                                 out.push_back(a.to_double());
                               return out;
                             })
      .def("value",
           [](const dmop::DiscreteOperator& op, long beta) {
             return op.value(beta).to_double();
           },
           py::arg("beta"))
      .def("value_str",
           [](const dmop::DiscreteOperator& op, long beta, int digits) {
             return dmop::to_string(op.value(beta), digits);
           },
           py::arg("beta"), py::arg("digits") = 40,
           "High-precision decimal form of D_m[beta]")
      .def("table",
           [](const dmop::DiscreteOperator& op, int radius) {
             std::vector<double> out;
             for (long b = -radius; b <= radius; ++b) out.push_back(op.value(b).to_double());
             return out;
           },
           py::arg("radius"))
      .def("convolve_delta",
           [](const dmop::DiscreteOperator& op, long beta, double tail_epsilon) {
             return dmop::convolve_dg(op, beta, tail_epsilon).to_double();
           },
           py::arg("beta"), py::arg("tail_epsilon") = dmop::kDefaultTailEpsilon,
           "h (D_m * G_m)[beta]; equals 1 at beta = 0 and 0 elsewhere")
      .def("margin",
           [](const dmop::DiscreteOperator& op, double tail_epsilon) {
             return dmop::apply_margin(op, tail_epsilon);
           },
           py::arg("tail_epsilon") = dmop::kDefaultTailEpsilon)
      .def("apply",
           [](const dmop::DiscreteOperator& op, const py::sequence& samples, long offset,
              double tail_epsilon) {
             std::vector<Real> values;
             values.reserve(py::len(samples));
             for (const auto& item : samples)
               values.push_back(
                   real_from(py::reinterpret_borrow<py::object>(item), op.precision()));
             const dmop::DiscreteFunction f(op.step(), offset, std::move(values));
             const auto result = dmop::apply_operator(op, f, tail_epsilon);
             std::vector<double> out;
             for (const auto& v : result.values) out.push_back(v.to_double());
             return py::make_tuple(result.offset, out);
           },
           py::arg("samples"), py::arg("offset") = 0,
           py::arg("tail_epsilon") = dmop::kDefaultTailEpsilon,
           "(interior_offset, values) of the truncated convolution D_m * f");
}
