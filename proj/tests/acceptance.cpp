// Acceptance gate: one deterministic pass/fail line per criterion, exit
// nonzero if any fails. Criterion 9 drives the CLI binary end to end; pass
// its path as argv[1].

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dmop/discrete_operator.hpp"
#include "dmop/errors.hpp"
#include "dmop/euler.hpp"
#include "dmop/rootfind.hpp"
#include "dmop/verify.hpp"

using dmop::DiscreteOperator;
using dmop::EulerPolynomial;
using dmop::Real;

namespace {

std::string g_cli_path;

std::string fail(const std::string& detail) { return detail; }

// ---- 1: exact m = 1 anchor ------------------------------------------------
std::string criterion_anchor() {
  for (double hv : {1.0, 0.5}) {
    const Real h(hv, 128);
    const auto op = DiscreteOperator::build(1, h, 6, 128);
    const Real h2 = dmop::pow_ui(h, 2);
    if (!(op.value(0) == Real(-2L, 128) / h2)) return fail("D_1[0] != -2/h^2 exactly");
    if (!(op.value(1) == Real(1L, 128) / h2)) return fail("D_1[1] != 1/h^2 exactly");
    for (long beta : {2L, 3L, 10L, 1000L})
      if (!op.value(beta).is_zero()) return fail("D_1 tail not identically zero");
    const auto inv = dmop::check_inverse(1, h, 10);
    if (!inv.all_passed() || inv.max_residual() != 0.0)
      return fail("m=1 inverse residuals not identically zero");
  }
  return "";
}

// ---- 2: Euler identities up to degree 40 ----------------------------------
std::string criterion_euler() {
  for (int k = 0; k <= 40; ++k) {
    const auto rec = EulerPolynomial::by_recurrence(k);
    const auto exp = EulerPolynomial::by_explicit_sum(k);
    if (rec.coeffs != exp.coeffs)
      return fail("recurrence != explicit sum at k=" + std::to_string(k));
    if (!rec.is_palindromic()) return fail("palindrome broken at k=" + std::to_string(k));
    if (rec.coefficient_sum() != dmop::factorial(static_cast<unsigned long>(k) + 1))
      return fail("row sum != (k+1)! at k=" + std::to_string(k));
  }
  return "";
}

// ---- 3: certified roots for m <= 20 ----------------------------------------
std::string criterion_roots() {
  for (int m = 1; m <= 20; ++m) {
    const auto poly = EulerPolynomial::by_recurrence(2 * m - 2);
    dmop::RootSet rs;
    try {
      rs = dmop::isolate_inner_roots(poly, 128, 1e-30);
    } catch (const dmop::NumericError& e) {
      return fail("isolation failed at m=" + std::to_string(m) + ": " + e.what());
    }
    if (rs.roots.size() != static_cast<size_t>(m - 1))
      return fail("root count != m-1 at m=" + std::to_string(m));
    for (size_t k = 0; k < rs.roots.size(); ++k) {
      const auto& root = rs.roots[k];
      if (!(root.to_double() > -1.0 && root.to_double() < 0.0))
        return fail("root outside (-1,0) at m=" + std::to_string(m));
      if (k > 0 && !(rs.roots[k - 1] < root))
        return fail("roots not ascending at m=" + std::to_string(m));
      if (!(rs.residuals[k] < 1e-28))
        return fail("residual " + std::to_string(rs.residuals[k]) +
                    " >= 1e-28 at m=" + std::to_string(m));
      const double recip = dmop::relative_residual(poly, 1L / root, 128);
      if (!(recip < 4e-28))
        return fail("reciprocal-pair residual out of bounds at m=" + std::to_string(m));
    }
  }
  return "";
}

// ---- 4: convolution inverse -------------------------------------------------
std::string criterion_inverse() {
  for (int m = 1; m <= 6; ++m)
    for (double hv : {1.0, 0.5}) {
      const auto report = dmop::check_inverse(m, Real(hv, 128), 20, 1e-12, 1e-10);
      if (!report.all_passed())
        return fail("max residual " + std::to_string(report.max_residual()) +
                    " at m=" + std::to_string(m) + " h=" + std::to_string(hv));
    }
  return "";
}

// ---- 5: moments --------------------------------------------------------------
std::string criterion_moments() {
  // m = 1 closes in closed form: S_4 = h^2 4! B_2 / 2! = 2 at h = 1
  mpq_class closed = dmop::bernoulli(2);
  closed *= dmop::factorial(4);
  closed /= dmop::factorial(2);
  if (closed != 2) return fail("4! B_2 / 2! != 2");

  const dmop::MomentTolerances tol{1e-9, 1e-8, 1e-6};
  for (int m = 1; m <= 6; ++m) {
    const auto report = dmop::check_moments(m, Real(1L, 128), 128, tol);
    if (report.checks.size() != static_cast<size_t>(4 * m) + 1)
      return fail("incomplete moment report at m=" + std::to_string(m));
    for (const auto& c : report.checks)
      if (!c.passed)
        return fail("moment " + c.params + " residual " + std::to_string(c.residual) +
                    " at m=" + std::to_string(m));
  }
  return "";
}

// ---- 6: Fourier symbol --------------------------------------------------------
std::string criterion_symbol() {
  for (int m = 1; m <= 5; ++m) {
    const auto report = dmop::check_symbols(m, Real(1L, 128), 128, 10, 0x5eed5eedULL,
                                            1e-8, 1e-12);
    if (!report.all_passed())
      return fail("seeded sweep failed at m=" + std::to_string(m) + " (max " +
                  std::to_string(report.max_residual()) + ")");

    const Real p("0.001", 128);
    const Real closed = dmop::symbol_closed_form(m, Real(1L, 128), p, 128);
    Real limit = dmop::pow_ui(2L * dmop::pi(128) * p, 2 * static_cast<unsigned long>(m));
    if (m % 2 == 1) limit = -limit;
    const double dev = (dmop::abs(closed - limit) / dmop::abs(limit)).to_double();
    if (!(dev < 0.01))
      return fail("small-p limit off by " + std::to_string(dev) +
                  " at m=" + std::to_string(m));
  }
  return "";
}

// ---- 7: representation equality -----------------------------------------------
std::string criterion_representation() {
  for (int m = 2; m <= 8; ++m) {
    const auto report = dmop::check_representations(m, Real(1L, 128), 20, 1e-20, 128);
    if (!report.all_passed())
      return fail("deviation " + std::to_string(report.max_residual()) +
                  " at m=" + std::to_string(m));
  }
  return "";
}

// ---- 8: amplitude identity -----------------------------------------------------
std::string criterion_amplitude() {
  for (int m = 2; m <= 12; ++m) {
    const auto report = dmop::check_amplitude_identity(m, 128, 1e-25);
    if (!report.all_passed())
      return fail("max deviation " + std::to_string(report.max_residual()) +
                  " at m=" + std::to_string(m));
  }
  return "";
}

// ---- 9: convergence-order demo through the CLI ---------------------------------
int run_cmd(const std::string& cmd) {
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

double interior_max_error(const std::string& csv_path, double h) {
  std::ifstream in(csv_path);
  std::string line;
  std::getline(in, line);  // header
  double worst = 0.0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    const long idx = std::stol(line.substr(0, comma));
    const double value = std::stod(line.substr(comma + 1));
    worst = std::max(worst, std::fabs(value - std::sin(h * static_cast<double>(idx))));
  }
  return worst;
}

std::string criterion_convergence() {
  if (g_cli_path.empty()) return fail("CLI path not supplied (argv[1])");
  const mpfr_prec_t prec = 192;
  double err[2] = {0.0, 0.0};
  for (int level = 0; level < 2; ++level) {
    const long n = level == 0 ? 64 : 128;
    const std::string hs = level == 0 ? "0.0625" : "0.03125";
    const Real h(hs, prec);
    const std::string in_path = "acc_sin_in_" + std::to_string(level) + ".csv";
    const std::string out_path = "acc_sin_out_" + std::to_string(level) + ".csv";
    {
      std::ofstream out(in_path);
      out << "index,value\n";
      for (long i = -n; i <= n; ++i)
        out << i << ',' << dmop::to_string(dmop::sin(h * Real(i, prec)), 40) << '\n';
    }
    const std::string cmd = g_cli_path + " apply --m 2 --h " + hs +
                            " --precision 192 --tail-eps 1e-20 --digits 25 --input " +
                            in_path + " --output " + out_path + " 2>/dev/null";
    if (run_cmd(cmd) != 0) return fail("dmop apply exited nonzero");
    err[level] = interior_max_error(out_path, level == 0 ? 0.0625 : 0.03125);
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
  }
  if (!(err[0] > 0 && err[1] > 0)) return fail("degenerate errors");
  const double ratio = err[0] / err[1];
  char buf[160];
  snprintf(buf, sizeof buf, "ratio %.3f outside [12, 20] (err_h %.3e, err_h/2 %.3e)",
           ratio, err[0], err[1]);
  if (!(ratio >= 12.0 && ratio <= 20.0)) return fail(buf);
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  struct Criterion {
    int id;
    const char* label;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact m=1 anchor (table and inverse bitwise exact)", criterion_anchor},
      {2, "Euler coefficient identities through degree 40", criterion_euler},
      {3, "certified inner roots for m <= 20 at 128 bits", criterion_roots},
      {4, "convolution inverse within 1e-10 for m <= 6", criterion_inverse},
      {5, "moment sums (zeros, (2m)!, Bernoulli closure)", criterion_moments},
      {6, "Fourier symbol direct vs closed form", criterion_symbol},
      {7, "representation equality within 1e-20 for m <= 8", criterion_representation},
      {8, "amplitude identity within 1e-25 for m <= 12", criterion_amplitude},
      {9, "order-2m convergence demo through the CLI", criterion_convergence},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("[PASS] criterion %d: %s\n", c.id, c.label);
    } else {
      std::printf("[FAIL] criterion %d: %s -- %s\n", c.id, c.label, detail.c_str());
      ++failures;
    }
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
