// dmop: construct the discrete analogue of d^2m/dx^2m, verify its
// identities, apply it to sampled data, and evaluate its Fourier symbol.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numeric failure. Diagnostics go to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dmop/discrete_operator.hpp"
#include "dmop/errors.hpp"
#include "dmop/verify.hpp"

namespace {

using dmop::Real;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  int m = 1;
  std::string h = "1";
  long precision = 128;
  std::string format = "csv";
  int digits = 0;  // 0: shortest round-trip double
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_format = true) {
  cmd->set_help_flag("--help", "print help");  // frees -h for the grid step
  cmd->add_option("--m", opts->m, "operator order parameter m (>= 1)")
      ->required()
      ->check(CLI::Range(1, 64));
  cmd->add_option("--h", opts->h, "grid step h (decimal literal)")->capture_default_str();
  cmd->add_option("--precision", opts->precision, "working precision in bits (>= 64)")
      ->capture_default_str()
      ->check(CLI::Range(64L, 8192L));
  if (with_format) {
    cmd->add_option("--format", opts->format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--digits", opts->digits,
                    "significant digits for CSV values (default: shortest "
                    "64-bit round-trip)")
        ->check(CLI::Range(0, 60));
  }
  cmd->add_option("--output", opts->output, "output path (default: stdout)");
}

Real parse_step(const CommonOpts& opts) {
  const Real h(opts.h, static_cast<mpfr_prec_t>(opts.precision));
  if (!h.is_finite() || h.sign() <= 0)
    throw std::invalid_argument("grid step h must be finite and positive");
  return h;
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_value(const Real& v, int digits) {
  return digits > 0 ? dmop::to_string(v, digits) : shortest(v.to_double());
}

/// Runs `emit` against the chosen stream; file writes are atomic enough
/// for our purposes (truncate + write).
int with_output(const std::string& path, const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    return kExitOk;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "dmop: cannot open output file '" << path << "'\n";
    return kExitConfig;
  }
  emit(out);
  return kExitOk;
}

json report_to_json(const dmop::VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"params", c.params},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  }
  return json{{"m", report.m},
              {"h", report.h},
              {"precision", static_cast<long>(report.precision)},
              {"passed", report.all_passed()},
              {"checks", checks}};
}

// ------------------------------------------------------------------ table

struct TableOpts : CommonOpts {
  int radius = 10;
};

int run_table(const TableOpts& opts) {
  const Real h = parse_step(opts);
  const auto prec = static_cast<mpfr_prec_t>(opts.precision);
  const auto op = dmop::DiscreteOperator::build(opts.m, h, std::max(2, opts.radius), prec);

  const int meta_digits = opts.digits > 0 ? opts.digits : 25;
  return with_output(opts.output, [&](std::ostream& out) {
    if (opts.format == "json") {
      json lambdas = json::array(), amps = json::array();
      for (const auto& r : op.roots().roots) lambdas.push_back(r.to_double());
      for (const auto& a : op.amplitudes()) amps.push_back(a.to_double());
      json rows = json::array();
      for (int beta = -opts.radius; beta <= opts.radius; ++beta)
        rows.push_back(json::array({beta, op.value(beta).to_double()}));
      const json doc{{"meta",
                      {{"m", opts.m},
                       {"h", h.to_double()},
                       {"precision", static_cast<long>(prec)},
                       {"lambdas", lambdas},
                       {"amplitudes", amps}}},
                     {"rows", rows}};
      out << doc.dump(2) << '\n';
    } else {
      out << "# m=" << opts.m << " h=" << opts.h << " precision=" << prec << '\n';
      for (size_t k = 0; k < op.roots().roots.size(); ++k)
        out << "# lambda_" << k + 1 << '=' << dmop::to_string(op.roots().roots[k], meta_digits)
            << " amplitude_" << k + 1 << '=' << dmop::to_string(op.amplitudes()[k], meta_digits)
            << '\n';
      out << "beta,value\n";
      for (int beta = -opts.radius; beta <= opts.radius; ++beta)
        out << beta << ',' << format_value(op.value(beta), opts.digits) << '\n';
    }
  });
}

// ----------------------------------------------------------------- verify

struct VerifyOpts : CommonOpts {
  double tol = 0.0;  // 0: per-check defaults
  int beta_max = 20;
  double tail_epsilon = dmop::kDefaultTailEpsilon;
  int symbol_count = 10;
  std::uint64_t seed = 0x5eed5eedULL;
};

int run_verify(const VerifyOpts& opts) {
  const Real h = parse_step(opts);
  dmop::VerifyOptions vo;
  vo.beta_max = opts.beta_max;
  vo.tail_epsilon = opts.tail_epsilon;
  vo.symbol_count = opts.symbol_count;
  vo.symbol_seed = opts.seed;
  if (opts.tol > 0.0) {
    vo.abs_tol = opts.tol;
    vo.rel_tol = opts.tol;
    vo.high_rel_tol = opts.tol;
  }

  const auto report =
      dmop::verify_suite(opts.m, h, static_cast<mpfr_prec_t>(opts.precision), vo);

  const int stream_rc = with_output(opts.output, [&](std::ostream& out) {
    if (opts.format == "json") {
      out << report_to_json(report).dump(2) << '\n';
    } else {
      out << "name,params,residual,tolerance,passed\n";
      for (const auto& c : report.checks)
        out << c.name << ',' << c.params << ',' << shortest(c.residual) << ','
            << shortest(c.tolerance) << ',' << (c.passed ? 1 : 0) << '\n';
    }
  });
  if (stream_rc != kExitOk) return stream_rc;
  if (!report.all_passed()) {
    std::cerr << "dmop: verification FAILED (max residual " << report.max_residual()
              << ")\n";
    return kExitVerifyFailed;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ apply

struct ApplyOpts : CommonOpts {
  std::string input;
  double tail_epsilon = dmop::kDefaultTailEpsilon;
};

dmop::DiscreteFunction read_samples(const std::string& path, const Real& h,
                                    mpfr_prec_t prec) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::string line;
  bool have_offset = false;
  long offset = 0, expected = 0;
  std::vector<Real> values;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_offset && line.rfind("index,", 0) == 0) continue;  // header
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("malformed CSV line: '" + line + "'");
    const long idx = std::stol(line.substr(0, comma));
    if (!have_offset) {
      offset = idx;
      expected = idx;
      have_offset = true;
    }
    if (idx != expected)
      throw std::invalid_argument("sample indices must be contiguous (got " +
                                  std::to_string(idx) + ", expected " +
                                  std::to_string(expected) + ")");
    ++expected;
    values.emplace_back(line.substr(comma + 1), prec);
  }
  if (values.empty()) throw std::invalid_argument("input contains no samples");
  return dmop::DiscreteFunction(h, offset, std::move(values));
}

int run_apply(const ApplyOpts& opts) {
  const Real h = parse_step(opts);
  const auto prec = static_cast<mpfr_prec_t>(opts.precision);
  const auto op = dmop::DiscreteOperator::build(opts.m, h, 2, prec);
  const auto f = read_samples(opts.input, h, prec);
  const auto result = dmop::apply_operator(op, f, opts.tail_epsilon);

  return with_output(opts.output, [&](std::ostream& out) {
    out << "index,value\n";
    for (size_t j = 0; j < result.values.size(); ++j)
      out << result.offset + static_cast<long>(j) << ','
          << format_value(result.values[j], opts.digits) << '\n';
  });
}

// ----------------------------------------------------------------- symbol

struct SymbolOpts : CommonOpts {
  std::vector<std::string> freqs;
  double rel_tol = 1e-8;
};

int run_symbol(const SymbolOpts& opts) {
  const Real h = parse_step(opts);
  const auto prec = static_cast<mpfr_prec_t>(opts.precision);

  struct Row {
    std::string p;
    dmop::SymbolCheck check;
  };
  std::vector<Row> rows;
  for (const auto& ps : opts.freqs) {
    const Real p(ps, prec);
    if (!p.is_finite()) throw std::invalid_argument("frequency must be finite");
    rows.push_back({ps, dmop::check_symbol(opts.m, h, p, prec, opts.rel_tol)});
  }

  return with_output(opts.output, [&](std::ostream& out) {
    if (opts.format == "json") {
      json jrows = json::array();
      for (const auto& r : rows)
        jrows.push_back({{"p", r.p},
                         {"direct", r.check.direct},
                         {"closed", r.check.closed},
                         {"residual", r.check.relative_residual},
                         {"imag", r.check.imag_abs},
                         {"lattice", r.check.lattice}});
      out << json{{"m", opts.m}, {"h", h.to_double()}, {"rows", jrows}}.dump(2) << '\n';
    } else {
      out << "p,direct,closed,residual\n";
      for (const auto& r : rows)
        out << r.p << ',' << shortest(r.check.direct) << ',' << shortest(r.check.closed)
            << ',' << shortest(r.check.relative_residual) << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete analogue of d^2m/dx^2m: tables, verification, application"};
  app.require_subcommand(1);

  TableOpts table_opts;
  auto* table = app.add_subcommand("table", "emit the operator table D_m[beta]");
  add_common(table, &table_opts);
  table->add_option("--radius", table_opts.radius, "emit rows for |beta| <= radius")
      ->capture_default_str()
      ->check(CLI::Range(0, 100000));

  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "run the identity suite, exit 1 on failure");
  add_common(verify, &verify_opts);
  verify->add_option("--tol", verify_opts.tol,
                     "override absolute/relative tolerances (default: per-check)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--betamax", verify_opts.beta_max, "index range for lattice checks")
      ->capture_default_str()
      ->check(CLI::Range(0, 10000));
  verify->add_option("--tail-eps", verify_opts.tail_epsilon, "truncation budget")
      ->capture_default_str();
  verify->add_option("--symbol-count", verify_opts.symbol_count,
                     "seeded frequencies per suite")
      ->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "seed for the frequency sweep")
      ->capture_default_str();

  ApplyOpts apply_opts;
  auto* apply = app.add_subcommand("apply", "convolve the operator with sampled data");
  add_common(apply, &apply_opts);
  apply->add_option("--input", apply_opts.input, "CSV file with 'index,value' rows")
      ->required();
  apply->add_option("--tail-eps", apply_opts.tail_epsilon,
                    "margin truncation budget relative to the row scale")
      ->capture_default_str();

  SymbolOpts symbol_opts;
  auto* symbol = app.add_subcommand("symbol", "direct vs closed-form Fourier symbol");
  add_common(symbol, &symbol_opts);
  symbol->add_option("--p", symbol_opts.freqs, "frequencies to evaluate")
      ->required()
      ->delimiter(',');
  symbol->add_option("--rel-tol", symbol_opts.rel_tol,
                     "relative agreement target (drives truncation)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*table) return run_table(table_opts);
    if (*verify) return run_verify(verify_opts);
    if (*apply) return run_apply(apply_opts);
    return run_symbol(symbol_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "dmop: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "dmop: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dmop::NumericError& e) {
    std::cerr << "dmop: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "dmop: " << e.what() << '\n';
    return kExitNumeric;
  }
}
