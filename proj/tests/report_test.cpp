#include "ccr/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace ccr;

namespace {

RunConfig make(std::string command, std::string kind, std::vector<Eigen::Index> dims, Grid grid = {}) {
  RunConfig cfg;
  cfg.command = std::move(command);
  cfg.kind = std::move(kind);
  cfg.dims = std::move(dims);
  cfg.grid = std::move(grid);
  return cfg;
}

const CheckRecord* find(const Report& r, const std::string& id) {
  for (const auto& rec : r.records()) {
    if (rec.id == id) return &rec;
  }
  return nullptr;
}

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(ConfigParsing, Grid) {
  EXPECT_EQ(parse_grid("0.1,0.2; -0.3, 0.5"), (Grid{{0.1, 0.2}, {-0.3, 0.5}}));
  EXPECT_THROW(parse_grid(""), ConfigError);
  EXPECT_THROW(parse_grid("0.1"), ConfigError);
  EXPECT_THROW(parse_grid("0.1,x"), ConfigError);
  EXPECT_THROW(parse_grid("0.1,0.2;"), ConfigError);
}

TEST(ConfigParsing, DimsAndMargin) {
  EXPECT_EQ(parse_dims("16, 32,64"), (std::vector<Eigen::Index>{16, 32, 64}));
  EXPECT_THROW(parse_dims("16,x"), ConfigError);
  EXPECT_EQ(parse_margin("auto"), std::nullopt);
  EXPECT_EQ(parse_margin("3"), 3);
  EXPECT_THROW(parse_margin("-1"), ConfigError);
}

TEST(ConfigValidation, FieldErrors) {
  auto field_of = [](RunConfig cfg) {
    try {
      finalize(cfg);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  EXPECT_EQ(field_of(make("verify", "antifock", {1})), "dim");
  EXPECT_EQ(field_of(make("verify", "bogus", {4})), "kind");
  EXPECT_EQ(field_of(make("verify", "lambda", {5})), "lambda");
  RunConfig lam = make("verify", "lambda", {4});
  lam.lambda = "-1/2";
  EXPECT_EQ(field_of(lam), "dim");
  lam.lambda = "1/2";
  lam.dims = {5};
  EXPECT_EQ(field_of(lam), "lambda");
  EXPECT_EQ(field_of(make("sweep", "antifock", {16})), "dims");
  EXPECT_EQ(field_of(make("sweep", "antifock", {32, 16})), "dims");
  RunConfig tol = make("verify", "antifock", {8});
  tol.tol = 0;
  EXPECT_EQ(field_of(tol), "tol");
  RunConfig margin = make("verify", "antifock", {8});
  margin.margin = 8;
  EXPECT_EQ(field_of(margin), "margin");
  RunConfig fmt = make("verify", "antifock", {8});
  fmt.format = "xml";
  EXPECT_EQ(field_of(fmt), "format");
  EXPECT_EQ(field_of(make("verify", "fock", {8})), "none");
}

TEST(ConfigValidation, Defaults) {
  RunConfig v;
  finalize(v);
  EXPECT_EQ(v.dims, (std::vector<Eigen::Index>{64}));
  EXPECT_EQ(v.grid.size(), 36u);
  RunConfig s;
  s.command = "sweep";
  finalize(s);
  EXPECT_EQ(s.dims, (std::vector<Eigen::Index>{16, 32, 64, 128}));
  EXPECT_EQ(s.grid, (Grid{{0.3, 0.3}}));
}

TEST(ConfigFile, LoadsAndReportsFields) {
  auto good = write_temp("ccr_good.json",
                         R"({"kind": "lambda", "lambda": "-1/3", "dim": 9, "grid": [[0.1, 0.2]], "seed": 7})");
  RunConfig cfg = load_config(good);
  EXPECT_EQ(cfg.kind, "lambda");
  EXPECT_EQ(cfg.dims, (std::vector<Eigen::Index>{9}));
  EXPECT_EQ(cfg.grid, (Grid{{0.1, 0.2}}));
  EXPECT_EQ(cfg.seed, 7u);

  try {
    load_config(write_temp("ccr_bad.json", R"({"kind": "fock", "colour": 1})"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "colour");
  }
  EXPECT_THROW(load_config(write_temp("ccr_broken.json", "{\"kind\": ")), ConfigError);
  EXPECT_THROW(load_config(write_temp("ccr_seed.json", R"({"seed": -1})")), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/ccr.json"), ConfigError);
}

TEST(Eval, DocumentedExamples) {
  const auto anti = RepresentationKind::anti_fock();
  EXPECT_EQ(cmd_eval("a+ * a", anti, std::string("e2")).state, "-3 · e2");
  EXPECT_EQ(cmd_eval("J*J", anti, std::nullopt).normal_form, "1");
  EXPECT_EQ(cmd_eval("a*a+ - a+*a", anti, std::nullopt).normal_form, "1");
  EXPECT_EQ(cmd_eval("J*a", anti, std::nullopt).normal_form, "-a * J");
  EXPECT_EQ(cmd_eval("J*a", RepresentationKind::fock(), std::nullopt).normal_form, "a");
}

TEST(Eval, StateSpecs) {
  const auto lam = RepresentationKind::lambda(Rational(-1, 2));
  FormalState s = parse_state("e-1 - (1/2)*e3 + sqrt2 * e0", lam);
  EXPECT_EQ(s.coefficient(-1), ExactScalar(1));
  EXPECT_EQ(s.coefficient(3), ExactScalar(Rational(-1, 2)));
  EXPECT_EQ(s.coefficient(0), ExactScalar::sqrt2());
  EXPECT_THROW(parse_state("", lam), ParseError);
  EXPECT_THROW(parse_state("e1 e2", lam), ParseError);
  EXPECT_THROW(parse_state("a * e1", lam), ParseError);
  EXPECT_THROW(parse_state("2 e1", lam), ParseError);
  EXPECT_THROW(parse_state("e-1", RepresentationKind::anti_fock()), std::out_of_range);
}

TEST(Verify, LambdaSkipsWeylAndListsWindow) {
  RunConfig cfg = make("verify", "lambda", {33});
  cfg.lambda = "-1/2";
  finalize(cfg);
  Report r = cmd_verify(cfg);
  EXPECT_EQ(r.exit_code(), 0);
  const CheckRecord* spectrum = find(r, "matrix.spectrum");
  ASSERT_NE(spectrum, nullptr);
  const auto& window = spectrum->parameters["window"];
  ASSERT_EQ(window.size(), 33u);
  EXPECT_EQ(window.front(), "(-33/2)");
  EXPECT_EQ(window[16], "(-1/2)");
  EXPECT_EQ(window.back(), "(31/2)");
  const CheckRecord* weyl = find(r, "weyl.relation");
  ASSERT_NE(weyl, nullptr);
  EXPECT_EQ(weyl->status, CheckStatus::Skipped);
  EXPECT_FALSE(weyl->reason.empty());
  EXPECT_TRUE(weyl->pass());
}

TEST(Verify, AntiFockAllPassAndDeterministic) {
  RunConfig cfg = make("verify", "antifock", {40}, {{0.1, 0.1}, {-0.2, 0.3}});
  finalize(cfg);
  Report a = cmd_verify(cfg);
  Report b = cmd_verify(cfg);
  EXPECT_EQ(a.exit_code(), 0) << a.to_csv();
  EXPECT_EQ(a.render(), b.render());
  EXPECT_EQ(a.count(CheckStatus::Skipped), 0u);
  for (const auto& rec : a.records()) EXPECT_TRUE(rec.to_json().contains("tolerance"));
  EXPECT_FALSE(a.to_json().contains("timing"));
}

TEST(Verify, TightToleranceFails) {
  RunConfig cfg = make("verify", "antifock", {16}, {{0.5, 0.5}});
  cfg.tol = 1e-30;
  finalize(cfg);
  Report r = cmd_verify(cfg);
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(find(r, "weyl.relation")->status, CheckStatus::Fail);
}

TEST(Verify, SeedChangesOnlyRandomRecord) {
  RunConfig a = make("verify", "fock", {12}, {{0.1, 0.1}});
  finalize(a);
  RunConfig b = a;
  b.seed = 99;
  Report ra = cmd_verify(a), rb = cmd_verify(b);
  ASSERT_EQ(ra.records().size(), rb.records().size());
  for (std::size_t k = 0; k < ra.records().size(); ++k) {
    if (ra.records()[k].id == "krein.random_adjoint") continue;
    EXPECT_EQ(ra.records()[k].to_json(), rb.records()[k].to_json());
  }
}

TEST(Sweep, ZeroPointGivesZeroColumn) {
  RunConfig cfg = make("sweep", "antifock", {8, 16, 32}, {{0.0, 0.0}});
  cfg.precision = Precision::Double;
  finalize(cfg);
  Report r = cmd_sweep(cfg);
  EXPECT_EQ(r.exit_code(), 0);
  ASSERT_EQ(r.columns().size(), 1u);
  EXPECT_EQ(r.columns()[0].residuals, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(r.columns()[0].log_decay_per_dim, std::nullopt);
}

TEST(Sweep, MonotoneDoubleColumn) {
  RunConfig cfg = make("sweep", "antifock", {16, 32, 64}, {{0.3, 0.3}});
  cfg.precision = Precision::Double;
  finalize(cfg);
  Report r = cmd_sweep(cfg);
  EXPECT_EQ(r.exit_code(), 0);
  const auto& col = r.columns()[0];
  EXPECT_TRUE(col.monotone);
  EXPECT_EQ(col.tol_star, 10 * col.residuals.back());
  ASSERT_TRUE(col.log_decay_per_dim.has_value());
  EXPECT_LT(*col.log_decay_per_dim, 0);
}

TEST(Sweep, NonMonotoneColumnFails) {
  // past the double rounding floor the residual stops decreasing
  RunConfig cfg = make("sweep", "antifock", {64, 128}, {{0.3, 0.3}});
  cfg.precision = Precision::Double;
  finalize(cfg);
  Report r = cmd_sweep(cfg);
  EXPECT_FALSE(r.columns()[0].monotone);
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Sweep, CsvAndJsonCarrySameRecords) {
  RunConfig cfg = make("sweep", "fock", {8, 12, 16}, {{0.2, 0.1}, {0.0, 0.4}});
  cfg.precision = Precision::Double;
  finalize(cfg);
  Report r = cmd_sweep(cfg);
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "D,s,t,residual");

  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  const auto json = r.to_json();
  ASSERT_EQ(lines.size(), json["records"].size() + 1);
  for (std::size_t k = 0; k < json["records"].size(); ++k) {
    const auto& rec = json["records"][k];
    std::string expected = rec["parameters"]["D"].dump() + "," + rec["parameters"]["s"].dump() + "," +
                           rec["parameters"]["t"].dump() + "," + rec["residual"].dump();
    EXPECT_EQ(lines[k + 1], expected);
    EXPECT_EQ(nlohmann::json::parse(lines[k + 1].substr(lines[k + 1].rfind(',') + 1)).get<double>(),
              rec["residual"].get<double>());
  }
}

TEST(Sweep, LambdaIsSkipped) {
  RunConfig cfg = make("sweep", "lambda", {5, 9});
  cfg.lambda = "-1/3";
  finalize(cfg);
  Report r = cmd_sweep(cfg);
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.count(CheckStatus::Skipped), 2u);
}
