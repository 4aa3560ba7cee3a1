// ccr: verification reports and an exact expression evaluator for CCR representations.

#include "ccr/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace {

constexpr int kExitConfig = 2;

bool use_color() { return std::getenv("CCR_NO_COLOR") == nullptr && isatty(STDERR_FILENO); }

std::string paint(const std::string& text, const char* code) {
  return use_color() ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
}

int config_error(const std::string& message, const char* label = "config error:") {
  std::cerr << paint(std::string("ccr: ") + label, "31") << ' ' << message << '\n';
  return kExitConfig;
}

int emit(const ccr::Report& report) {
  const std::string text = report.render();
  if (report.config().out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(report.config().out, std::ios::binary);
    if (!out) return config_error("field 'out': cannot write '" + report.config().out + "'");
    out << text;
  }
  const std::size_t failed = report.count(ccr::CheckStatus::Fail);
  std::string line = "ccr " + report.config().command + ": " +
                     std::to_string(report.count(ccr::CheckStatus::Pass)) + " passed, " +
                     std::to_string(failed) + " failed, " +
                     std::to_string(report.count(ccr::CheckStatus::Skipped)) + " skipped";
  std::cerr << paint(line, failed == 0 ? "32" : "31") << '\n';
  for (const auto& r : report.records()) {
    if (!r.pass()) std::cerr << "  " << paint("FAIL", "31") << ' ' << r.id << ' ' << r.parameters.dump() << '\n';
  }
  return report.exit_code();
}

struct ReportFlags {
  std::string config_path;
  std::string kind;
  std::string lambda;
  std::optional<long long> dim;
  std::string dims;
  std::string margin;
  std::string grid;
  std::optional<double> tol;
  std::string format;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string precision;
  bool timing = false;
};

void add_report_flags(CLI::App* cmd, ReportFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its settings");
  cmd->add_option("--kind", f.kind, "fock | antifock | lambda");
  cmd->add_option("--lambda", f.lambda, "rational in (-1, 0), e.g. -1/2");
  cmd->add_option("--dim", f.dim, "truncation dimension D");
  cmd->add_option("--dims", f.dims, "comma-separated dimensions");
  cmd->add_option("--margin", f.margin, "interior margin for Weyl checks: integer or auto");
  cmd->add_option("--grid", f.grid, "Weyl parameters \"s,t;s,t;...\"");
  cmd->add_option("--tol", f.tol, "tolerance for Weyl-type checks");
  cmd->add_option("--format", f.format, "json | csv");
  cmd->add_option("--out", f.out, "write the report here instead of stdout");
  cmd->add_option("--seed", f.seed, "seed for random-vector checks");
  cmd->add_option("--precision", f.precision, "sweep arithmetic: quad | double");
  cmd->add_flag("--timing", f.timing, "include wall-clock timing (makes output run-dependent)");
}

ccr::RunConfig build_config(const std::string& command, const ReportFlags& f) {
  ccr::RunConfig cfg = f.config_path.empty() ? ccr::RunConfig{} : ccr::load_config(f.config_path);
  cfg.command = command;
  if (!f.kind.empty()) cfg.kind = f.kind;
  if (!f.lambda.empty()) cfg.lambda = f.lambda;
  if (f.dim && !f.dims.empty()) throw ccr::ConfigError("dim", "give either --dim or --dims");
  if (f.dim) cfg.dims = {static_cast<Eigen::Index>(*f.dim)};
  if (!f.dims.empty()) cfg.dims = ccr::parse_dims(f.dims);
  if (!f.margin.empty()) cfg.margin = ccr::parse_margin(f.margin);
  if (!f.grid.empty()) cfg.grid = ccr::parse_grid(f.grid);
  if (f.tol) cfg.tol = *f.tol;
  if (!f.format.empty()) cfg.format = f.format;
  if (!f.out.empty()) cfg.out = f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (!f.precision.empty()) cfg.precision = ccr::parse_precision(f.precision);
  cfg.timing = cfg.timing || f.timing;
  ccr::finalize(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical checks for CCR representations on Krein spaces"};
  app.set_version_flag("--version", std::string(ccr::kToolVersion));
  app.require_subcommand(1);

  ReportFlags verify_flags, sweep_flags;
  auto* verify = app.add_subcommand("verify", "symbolic, matrix, Weyl and von Neumann checks");
  add_report_flags(verify, verify_flags);
  auto* sweep = app.add_subcommand("sweep", "Weyl residual against truncation dimension");
  add_report_flags(sweep, sweep_flags);

  std::string expression, eval_kind = "antifock", eval_lambda;
  std::optional<std::string> state;
  bool verbose = false;
  auto* eval = app.add_subcommand("eval", "normal-order an expression or apply it to a state");
  eval->add_option("expression", expression, "operator expression")->required();
  eval->add_option("--kind", eval_kind, "fock | antifock | lambda");
  eval->add_option("--lambda", eval_lambda, "rational in (-1, 0)");
  eval->add_option("--state", state, "state such as e2 or \"e0 - (1/2)*e3\"");
  eval->add_flag("--verbose", verbose, "print the normal form as well as the state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify) return emit(ccr::cmd_verify(build_config("verify", verify_flags)));
    if (*sweep) return emit(ccr::cmd_sweep(build_config("sweep", sweep_flags)));

    ccr::RunConfig kind_cfg;
    kind_cfg.kind = eval_kind;
    kind_cfg.lambda = eval_lambda;
    const ccr::RepresentationKind kind = kind_cfg.representation();
    const ccr::EvalResult result = ccr::cmd_eval(expression, kind, state);
    if (verbose || !result.state) std::cout << (verbose ? "normal form: " : "") << result.normal_form << '\n';
    if (result.state) std::cout << (verbose ? "state: " : "") << *result.state << '\n';
    return 0;
  } catch (const ccr::ConfigError& e) {
    return config_error(e.what());
  } catch (const ccr::ParseError& e) {
    return config_error(e.what(), "eval:");
  } catch (const std::out_of_range& e) {
    return config_error(e.what(), "eval:");
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  }
}
