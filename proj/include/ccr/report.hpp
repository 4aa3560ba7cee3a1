#pragma once

// verify / sweep / eval commands and the report envelope they produce.

#include "ccr/algebra.hpp"
#include "ccr/config.hpp"
#include "ccr/expression_parser.hpp"
#include "ccr/krein.hpp"
#include "ccr/matrix_rep.hpp"
#include "ccr/oracle.hpp"
#include "ccr/quad.hpp"
#include "ccr/representation.hpp"
#include "ccr/weyl.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace ccr {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "ccr-report/1";

using ojson = nlohmann::ordered_json;

enum class CheckStatus { Pass, Fail, Skipped };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct CheckRecord {
  std::string id;
  ojson parameters = ojson::object();
  std::optional<double> residual;  ///< empty when skipped
  double tolerance = 0;
  CheckStatus status = CheckStatus::Pass;
  std::string reason;

  bool pass() const { return status != CheckStatus::Fail; }

  ojson to_json() const {
    ojson j;
    j["id"] = id;
    j["parameters"] = parameters;
    j["residual"] = residual ? ojson(*residual) : ojson(nullptr);
    j["tolerance"] = tolerance;
    j["pass"] = pass();
    j["status"] = status_name(status);
    if (!reason.empty()) j["reason"] = reason;
    return j;
  }
};

/// Per-(s, t) summary of a convergence sweep.
struct SweepColumn {
  double s = 0;
  double t = 0;
  std::vector<double> residuals;  ///< one per swept dimension, in config order
  std::optional<double> log_decay_per_dim;
  double tol_star = 0;
  bool monotone = true;
};

class Report {
 public:
  explicit Report(RunConfig config) : config_(std::move(config)) {}

  const RunConfig& config() const { return config_; }
  const std::vector<CheckRecord>& records() const { return records_; }
  const std::vector<SweepColumn>& columns() const { return columns_; }

  void add(CheckRecord r) { records_.push_back(std::move(r)); }
  void add_column(SweepColumn c) { columns_.push_back(std::move(c)); }
  void set_wall_seconds(double s) { wall_seconds_ = s; }

  bool all_pass() const {
    return std::all_of(records_.begin(), records_.end(), [](const CheckRecord& r) { return r.pass(); });
  }
  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(),
                                                  [s](const CheckRecord& r) { return r.status == s; }));
  }
  int exit_code() const { return all_pass() ? 0 : 1; }

  ojson to_json() const {
    ojson j;
    j["schema"] = kReportSchema;
    j["tool"] = {{"name", "ccr"}, {"version", kToolVersion}};
    j["command"] = config_.command;
    j["config"] = config_json();
    ojson recs = ojson::array();
    for (const auto& r : records_) recs.push_back(r.to_json());
    j["records"] = std::move(recs);
    if (config_.command == "sweep") {
      ojson cols = ojson::array();
      for (const auto& c : columns_) {
        cols.push_back({{"s", c.s},
                        {"t", c.t},
                        {"residuals", c.residuals},
                        {"log_decay_per_dim", c.log_decay_per_dim ? ojson(*c.log_decay_per_dim) : ojson(nullptr)},
                        {"tol_star", c.tol_star},
                        {"monotone", c.monotone}});
      }
      j["sweep"] = std::move(cols);
    }
    j["summary"] = {{"total", records_.size()},
                    {"passed", count(CheckStatus::Pass)},
                    {"failed", count(CheckStatus::Fail)},
                    {"skipped", count(CheckStatus::Skipped)},
                    {"pass", all_pass()}};
    if (config_.timing) j["timing"] = {{"wall_seconds", wall_seconds_}};
    return j;
  }

  /// Sweeps project to `D,s,t,residual`; verify reports to `id,status,residual,tolerance`.
  std::string to_csv() const {
    std::ostringstream out;
    auto num = [](double x) { return ojson(x).dump(); };
    if (config_.command == "sweep") {
      out << "D,s,t,residual\n";
      for (const auto& r : records_) {
        if (!r.residual) continue;
        out << r.parameters["D"].dump() << ',' << r.parameters["s"].dump() << ','
            << r.parameters["t"].dump() << ',' << num(*r.residual) << '\n';
      }
    } else {
      out << "id,status,residual,tolerance\n";
      for (const auto& r : records_) {
        out << r.id << ',' << status_name(r.status) << ',' << (r.residual ? num(*r.residual) : "") << ','
            << num(r.tolerance) << '\n';
      }
    }
    return out.str();
  }

  std::string render() const { return config_.format == "csv" ? to_csv() : to_json().dump(2) + "\n"; }

 private:
  ojson config_json() const {
    ojson c;
    c["kind"] = config_.kind;
    c["lambda"] = config_.lambda.empty() ? ojson(nullptr) : ojson(config_.lambda);
    c["dims"] = config_.dims;
    c["margin"] = config_.margin ? ojson(*config_.margin) : ojson("auto");
    ojson grid = ojson::array();
    for (const auto& [s, t] : config_.grid) grid.push_back({s, t});
    c["grid"] = std::move(grid);
    c["tol"] = config_.tol ? ojson(*config_.tol) : ojson(nullptr);
    c["format"] = config_.format;
    c["seed"] = config_.seed;
    c["precision"] = config_.precision == Precision::Quad ? "quad" : "double";
    return c;
  }

  RunConfig config_;
  std::vector<CheckRecord> records_;
  std::vector<SweepColumn> columns_;
  double wall_seconds_ = 0;
};

inline constexpr double kExponentialTolerance = 1e-10;
inline constexpr std::int64_t kSymbolicDepth = 50;

/// Algebraic identities get 1e-12, growing linearly past D = 64.
inline double algebraic_tolerance(Eigen::Index d) { return 1e-12 * std::max(1.0, static_cast<double>(d) / 64.0); }

namespace detail {

inline CheckRecord measured(std::string id, ojson params, double residual, double tol) {
  CheckRecord r;
  r.id = std::move(id);
  r.parameters = std::move(params);
  r.residual = residual;
  r.tolerance = tol;
  r.status = residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

/// Exact checks count mismatches against a zero tolerance.
inline CheckRecord exact(std::string id, ojson params, std::size_t mismatches) {
  params["exact"] = true;
  return measured(std::move(id), std::move(params), static_cast<double>(mismatches), 0.0);
}

inline CheckRecord skipped(std::string id, ojson params, double tol, std::string reason) {
  CheckRecord r;
  r.id = std::move(id);
  r.parameters = std::move(params);
  r.tolerance = tol;
  r.status = CheckStatus::Skipped;
  r.reason = std::move(reason);
  return r;
}

inline ojson point(double s, double t) { return {{"s", s}, {"t", t}}; }

/// Unit vector from raw generator bits, so the draw does not depend on library distributions.
inline CVector<double> random_unit_vector(std::mt19937_64& rng, Eigen::Index d) {
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  CVector<double> v(d);
  for (Eigen::Index k = 0; k < d; ++k) v(k) = {uniform(), uniform()};
  return v / v.norm();
}

inline void symbolic_suite(Report& report, const RepresentationKind& kind) {
  const OperatorExpr one = OperatorExpr::identity();
  const std::int64_t depth = kSymbolicDepth;
  const ojson params = {{"depth", depth}};
  auto identity_check = [&](const std::string& id, const OperatorExpr& lhs, const OperatorExpr& rhs) {
    report.add(exact(id, params, verify_identity(lhs, rhs, kind, depth) ? 0 : 1));
  };
  const std::int64_t lo = lowest_checked_index(kind, depth);

  identity_check("symbolic.ccr", commutator(op_a(), op_adag()), one);
  identity_check("symbolic.j_involution", op_j() * op_j(), one);

  std::size_t bad_number = 0, bad_pairing = 0, bad_j_norm = 0;
  for (std::int64_t k = lo; k <= depth; ++k) {
    const FormalState ek = FormalState::basis(kind, k);
    const FormalState next = FormalState::basis(kind, k + 1);
    if (!(apply(op_adag() * op_a(), ek) == ExactScalar(number_eigenvalue(kind, k)) * ek)) ++bad_number;
    if (inner(apply(op_adag(), ek), next) != inner(ek, apply(op_a(), next))) ++bad_pairing;
    const ExactScalar jn = inner_j(ek, ek);
    if (!jn.is_rational() || !(jn.r0() > 0)) ++bad_j_norm;
  }
  report.add(exact("symbolic.number_operator", params, bad_number));
  report.add(exact("symbolic.adjoint_pairing", params, bad_pairing));
  report.add(exact("symbolic.j_norm_positive", params, bad_j_norm));

  if (kind.is_anti_fock()) {
    std::size_t bad_norm = 0;
    Rational factorial = 1;
    for (std::int64_t n = 1; n <= depth; ++n) {
      if (n > 1) factorial *= n - 1;
      const FormalState e = FormalState::basis(kind, n - 1);
      const Rational expected = (n % 2 == 1 ? 1 : -1) * factorial;
      if (inner(e, e) != ExactScalar(expected)) ++bad_norm;
    }
    report.add(exact("symbolic.norm_law", params, bad_norm));
    identity_check("symbolic.anticommute_a_j", anticommutator(op_a(), op_j()), OperatorExpr());
    identity_check("symbolic.anticommute_adag_j", anticommutator(op_adag(), op_j()), OperatorExpr());
    report.add(exact("symbolic.adjoint_star", {},
                     adjoint_star(op_adag(), kind.j_rule()) == ExactScalar(-1) * op_a() ? 0 : 1));
    // b = a+, b+ = a, b* = -a, N~ = b* b
    const OperatorExpr b = op_adag(), b_plus = op_a(), b_star = ExactScalar(-1) * op_a();
    identity_check("symbolic.b_commutator_plus", commutator(b, b_plus), ExactScalar(-1) * one);
    identity_check("symbolic.b_commutator_star", commutator(b, b_star), one);
    identity_check("symbolic.n_tilde", b_star * b, ExactScalar(-1) * (op_adag() * op_a()) - one);
  } else if (kind.is_fock()) {
    std::size_t bad_norm = 0;
    Rational factorial = 1;
    for (std::int64_t k = 0; k <= depth; ++k) {
      if (k > 0) factorial *= k;
      const FormalState e = FormalState::basis(kind, k);
      if (inner(e, e) != ExactScalar(factorial)) ++bad_norm;
    }
    report.add(exact("symbolic.norm_law", params, bad_norm));
    identity_check("symbolic.j_trivial", op_j(), one);
    report.add(exact("symbolic.adjoint_star", {}, adjoint_star(op_adag(), kind.j_rule()) == op_a() ? 0 : 1));
  }
}

inline void matrix_suite(Report& report, const TruncatedRep<double>& rep, std::uint64_t seed) {
  const Eigen::Index d = rep.dim();
  const RepresentationKind& kind = rep.kind();
  const double alg = algebraic_tolerance(d);
  const ojson dim = {{"D", d}};
  using M = CMatrix<double>;

  report.add(measured("matrix.oracle", dim, oracle_deviation(rep), 1e-14));
  const M plus = plus_adjoint(rep.metric(), rep.a());
  report.add(measured("matrix.plus_adjoint", dim, max_abs(M(rep.adag() - plus)), 1e-14));
  report.add(measured("matrix.plus_adjoint_involution", dim,
                      max_abs(M(plus_adjoint(rep.metric(), plus) - rep.a())), 1e-14));

  std::size_t bad_sig = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (rep.metric().signature()[static_cast<std::size_t>(i)] != gram_sign(kind, rep.index_of(i))) ++bad_sig;
  }
  ojson sig = dim;
  sig["positive"] = rep.metric().signature().positive_count();
  sig["negative"] = rep.metric().signature().negative_count();
  report.add(exact("matrix.signature", sig, bad_sig));

  std::vector<Rational> window;
  for (Eigen::Index i = 0; i < d; ++i) window.push_back(number_eigenvalue(kind, rep.index_of(i)));
  std::sort(window.begin(), window.end());
  const std::vector<double> spectrum = spectrum_n(rep);
  std::size_t bad_spec = 0;
  ojson exact_window = ojson::array();
  for (std::size_t k = 0; k < window.size(); ++k) {
    if (spectrum[k] != rational_to<double>(window[k])) ++bad_spec;
    exact_window.push_back(rational_string(window[k]));
  }
  ojson window_params = dim;
  window_params["window"] = std::move(exact_window);
  report.add(exact("matrix.spectrum", window_params, bad_spec));

  report.add(measured("matrix.hermiticity_n", dim, check_j_selfadjoint(rep.metric(), rep.nm(), alg).residual, alg));
  ojson m1 = dim;
  m1["margin"] = 1;
  report.add(measured("matrix.commutator", m1, commutator_residual(rep, 1), alg));

  std::mt19937_64 rng(seed);
  const int samples = 8;
  double worst = 0;
  for (int n = 0; n < samples; ++n) {
    const CVector<double> x = random_unit_vector(rng, d);
    const CVector<double> y = random_unit_vector(rng, d);
    const auto lhs = indefinite_dot(rep.metric(), CVector<double>(rep.a() * x), y);
    const auto rhs = indefinite_dot(rep.metric(), x, CVector<double>(rep.adag() * y));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  ojson rv = dim;
  rv["seed"] = seed;
  rv["samples"] = samples;
  report.add(measured("krein.random_adjoint", rv, worst, alg));

  const std::string no_pair = "P and Q are built from the Fock or anti-Fock b-pair; " + kind.name() +
                              " has no such pair";
  if (kind.is_lambda()) {
    for (const char* id : {"matrix.hermiticity_p", "matrix.hermiticity_q", "matrix.pq_commutator",
                           "matrix.b_commutator", "matrix.n_tilde"}) {
      report.add(skipped(id, dim, alg, no_pair));
    }
    report.add(skipped("rellich", dim, 1e-11 * std::max(1.0, d / 64.0), no_pair));
    return;
  }

  const PQPair<double> pq = build_pq(rep);
  const InteriorProjector proj = interior(rep, 1);
  report.add(measured("matrix.hermiticity_p", dim, check_j_selfadjoint(rep.metric(), pq.p, alg).residual, alg));
  report.add(measured("matrix.hermiticity_q", dim, check_j_selfadjoint(rep.metric(), pq.q, alg).residual, alg));
  const M eye = M::Identity(d, d);
  report.add(measured("matrix.pq_commutator", m1,
                      max_abs(proj.compress(M(pq.p * pq.q - pq.q * pq.p + imaginary_unit<double>() * eye))), alg));
  report.add(measured("matrix.b_commutator", m1,
                      max_abs(proj.compress(M(rep.b() * rep.b_star() - rep.b_star() * rep.b() - eye))), alg));
  std::size_t bad_tilde = 0;
  for (Eigen::Index m = 0; m < d; ++m) {
    if (rep.number_tilde()(m, m) != std::complex<double>(static_cast<double>(m))) ++bad_tilde;
  }
  report.add(exact("matrix.n_tilde", dim, bad_tilde));
  ojson m2 = dim;
  m2["margin"] = 2;
  if (d > 2) {
    report.add(measured("rellich", m2, rellich_check(pq, rep, 2), 1e-11 * std::max(1.0, d / 64.0)));
  } else {
    report.add(skipped("rellich", m2, 1e-11, "margin 2 leaves nothing at D = 2"));
  }
}

inline void weyl_suite(Report& report, const TruncatedRep<double>& rep) {
  const RunConfig& cfg = report.config();
  const Eigen::Index d = rep.dim();
  const Eigen::Index margin = cfg.margin.value_or(weyl_margin(d));
  const double tol = cfg.tol.value_or(kExponentialTolerance);
  const RepresentationKind& kind = rep.kind();
  auto params = [&](double s, double t) {
    ojson p = {{"D", d}, {"margin", margin}};
    p.update(point(s, t));
    return p;
  };

  if (kind.is_lambda()) {
    const std::string why = "no Weyl pair is constructed for " + kind.name();
    report.add(skipped("weyl.relation", {{"D", d}, {"margin", margin}}, tol, why));
    report.add(skipped("vn.equivalence", {{"D", d}, {"margin", margin}}, tol, why));
    return;
  }

  const WeylPair<double> pair(build_pq(rep));
  for (const auto& [s, t] : cfg.grid) {
    report.add(measured("weyl.relation", params(s, t), weyl_residual(pair, s, t, margin), tol));
  }

  if (kind.is_fock()) {
    report.add(skipped("vn.equivalence", {{"D", d}, {"margin", margin}}, tol,
                       "the Fock pair is already the Schrodinger pair"));
    return;
  }

  const EquivalenceReport<double> eq = verify_von_neumann(rep, cfg.grid, margin);
  const double alg = algebraic_tolerance(d);
  const ojson dim = {{"D", d}};
  report.add(measured("vn.intertwiner_p", dim, eq.err_p, alg));
  report.add(measured("vn.intertwiner_q", dim, eq.err_q, alg));
  report.add(measured("vn.intertwiner_unitary", dim, eq.err_w_unitary, alg));
  report.add(exact("vn.multiplicity", {{"D", d}, {"max_multiplicity", eq.max_multiplicity}},
                   static_cast<std::size_t>(eq.max_multiplicity - 1)));
  for (const auto& e : eq.grid) {
    ojson p = params(e.s, e.t);
    p["source_weyl_residual"] = e.source;
    p["target_weyl_residual"] = e.target;
    report.add(measured("vn.weyl_intertwined", p, e.intertwined, tol));
  }
}

template <class Real>
std::vector<double> sweep_dimension(const RepresentationKind& kind, Eigen::Index d, Eigen::Index margin,
                                    const Grid& grid) {
  const WeylPair<Real> pair(build_pq(build_rep<Real>(kind, d)));
  std::vector<double> out;
  for (const auto& [s, t] : grid) {
    out.push_back(static_cast<double>(weyl_residual(pair, Real(s), Real(t), margin)));
  }
  return out;
}

/// Least-squares slope of ln(residual) against D over the nonzero residuals.
inline std::optional<double> fit_log_decay(const std::vector<Eigen::Index>& dims, const std::vector<double>& r) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (r[k] > 0) pts.emplace_back(static_cast<double>(dims[k]), std::log(r[k]));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

}  // namespace detail

/// Runs every suite for each configured dimension. Expects a finalized config.
inline Report cmd_verify(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report report(cfg);
  const RepresentationKind kind = cfg.representation();
  detail::symbolic_suite(report, kind);
  for (Eigen::Index d : cfg.dims) {
    const TruncatedRep<double> rep = build_rep<double>(kind, d);
    detail::matrix_suite(report, rep, cfg.seed);
    detail::weyl_suite(report, rep);
  }
  report.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

/// Weyl residual against D for each grid point. Dimensions run concurrently. Expects a finalized config.
inline Report cmd_sweep(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report report(cfg);
  const RepresentationKind kind = cfg.representation();
  const char* precision = cfg.precision == Precision::Quad ? "quad" : "double";
  auto margin_for = [&](Eigen::Index d) { return cfg.margin.value_or(weyl_margin(d)); };

  if (kind.is_lambda()) {
    for (Eigen::Index d : cfg.dims) {
      for (const auto& [s, t] : cfg.grid) {
        ojson p = {{"D", d}, {"s", s}, {"t", t}, {"margin", margin_for(d)}, {"precision", precision}};
        report.add(detail::skipped("sweep.weyl_residual", p, cfg.tol.value_or(0.0),
                                   "no Weyl pair is constructed for " + kind.name()));
      }
    }
    return report;
  }

  std::vector<std::future<std::vector<double>>> jobs;
  for (Eigen::Index d : cfg.dims) {
    jobs.push_back(std::async(std::launch::async, [&cfg, kind, d, m = margin_for(d)] {
      return cfg.precision == Precision::Quad ? detail::sweep_dimension<Quad>(kind, d, m, cfg.grid)
                                              : detail::sweep_dimension<double>(kind, d, m, cfg.grid);
    }));
  }
  std::vector<std::vector<double>> by_dim;
  for (auto& job : jobs) by_dim.push_back(job.get());

  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    SweepColumn col;
    col.s = cfg.grid[g].first;
    col.t = cfg.grid[g].second;
    for (const auto& row : by_dim) col.residuals.push_back(row[g]);
    col.log_decay_per_dim = detail::fit_log_decay(cfg.dims, col.residuals);
    col.tol_star = 10.0 * col.residuals.back();
    const double tol = cfg.tol.value_or(col.tol_star);
    for (std::size_t k = 0; k < cfg.dims.size(); ++k) {
      const double r = col.residuals[k];
      bool step_ok = true;
      if (k > 0) {
        const double prev = col.residuals[k - 1];
        step_ok = r < prev || (r == 0 && prev == 0);
      }
      col.monotone = col.monotone && step_ok;
      const bool last = k + 1 == cfg.dims.size();
      CheckRecord rec;
      rec.id = "sweep.weyl_residual";
      rec.parameters = {{"D", cfg.dims[k]}, {"s", col.s}, {"t", col.t}, {"margin", margin_for(cfg.dims[k])},
                        {"precision", precision}};
      rec.residual = r;
      rec.tolerance = tol;
      rec.status = step_ok && (!last || r <= tol) ? CheckStatus::Pass : CheckStatus::Fail;
      report.add(std::move(rec));
    }
    report.add_column(std::move(col));
  }
  report.set_wall_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

/// "e2", "-e1 + (1/2)*e3", "sqrt2*e-1"; coefficients use the scalar part of the expression grammar.
inline FormalState parse_state(const std::string& text, const RepresentationKind& kind) {
  FormalState state(kind);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError { return ParseError(what, pos + 1); };
  bool first = true;
  skip();
  if (pos == text.size()) throw fail("empty state");
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    ExactScalar coeff(sign);
    if (pos < text.size() && text[pos] != 'e') {
      // coefficient up to the top-level '*'
      std::size_t depth = 0, end = pos;
      while (end < text.size() && !(depth == 0 && text[end] == '*')) {
        if (text[end] == '(') ++depth;
        if (text[end] == ')' && depth > 0) --depth;
        ++end;
      }
      if (end == text.size()) throw fail("expected '<coefficient> * e<k>'");
      OperatorExpr c;
      try {
        c = parse_expression(text.substr(pos, end - pos));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), pos + e.column());
      }
      if (!c.is_scalar()) throw fail("coefficient must be a scalar");
      coeff = coeff * c.scalar_part();
      pos = end + 1;
      skip();
    }
    if (pos >= text.size() || text[pos] != 'e') throw fail("expected a basis vector e<k>");
    ++pos;
    const std::size_t digits_at = pos;
    if (pos < text.size() && text[pos] == '-') ++pos;
    const std::size_t digit_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digit_start) throw fail("expected a basis index");
    const std::int64_t k = std::stoll(text.substr(digits_at, pos - digits_at));
    state.add(k, coeff);
    first = false;
  }
  return state;
}

struct EvalResult {
  std::string normal_form;
  std::optional<std::string> state;
};

/// Normal form under the J rule of `kind`, plus the exact image of `state_text` when given.
/// Throws ParseError on bad text and std::out_of_range for an index outside the representation.
inline EvalResult cmd_eval(const std::string& expression, const RepresentationKind& kind,
                           const std::optional<std::string>& state_text) {
  const OperatorExpr expr = parse_expression(expression);
  EvalResult out{normal_order(expr, kind.j_rule()).to_string(), std::nullopt};
  if (state_text) out.state = apply(expr, parse_state(*state_text, kind)).to_string();
  return out;
}

}  // namespace ccr
