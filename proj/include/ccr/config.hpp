#pragma once

// Run configuration for the report commands, with field-level validation.

#include "ccr/exact_scalar.hpp"
#include "ccr/representation.hpp"

#include <Eigen/Core>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccr {

/// Invalid or inconsistent configuration; `field()` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Precision { Double, Quad };

using Grid = std::vector<std::pair<double, double>>;

struct RunConfig {
  std::string command = "verify";
  std::string kind = "antifock";
  std::string lambda;  ///< rational text, Lambda only
  std::vector<Eigen::Index> dims;
  std::optional<Eigen::Index> margin;  ///< empty means auto
  Grid grid;
  std::optional<double> tol;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  Precision precision = Precision::Quad;
  bool timing = false;

  RepresentationKind representation() const;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(field, "not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(field, "not a number: '" + text + "'");
  return v;
}

inline Eigen::Index parse_index(const std::string& field, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(field, "not an integer: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError(field, "not an integer: '" + text + "'");
  return static_cast<Eigen::Index>(v);
}

}  // namespace detail

/// "s,t;s,t;..."
inline Grid parse_grid(const std::string& text) {
  Grid grid;
  for (const std::string& point : detail::split(text, ';')) {
    auto st = detail::split(point, ',');
    if (st.size() != 2) throw ConfigError("grid", "expected 's,t' but got '" + point + "'");
    grid.emplace_back(detail::parse_double("grid", st[0]), detail::parse_double("grid", st[1]));
  }
  if (grid.empty()) throw ConfigError("grid", "grid is empty");
  return grid;
}

inline std::vector<Eigen::Index> parse_dims(const std::string& text) {
  std::vector<Eigen::Index> dims;
  for (const std::string& item : detail::split(text, ',')) dims.push_back(detail::parse_index("dims", item));
  return dims;
}

inline std::optional<Eigen::Index> parse_margin(const std::string& text) {
  if (text == "auto") return std::nullopt;
  Eigen::Index m = detail::parse_index("margin", text);
  if (m < 0) throw ConfigError("margin", "must be non-negative or 'auto'");
  return m;
}

inline Precision parse_precision(const std::string& text) {
  if (text == "quad") return Precision::Quad;
  if (text == "double") return Precision::Double;
  throw ConfigError("precision", "expected 'quad' or 'double', got '" + text + "'");
}

inline RepresentationKind RunConfig::representation() const {
  if (kind == "fock") return RepresentationKind::fock();
  if (kind == "antifock") return RepresentationKind::anti_fock();
  if (kind != "lambda") throw ConfigError("kind", "expected fock, antifock or lambda, got '" + kind + "'");
  if (lambda.empty()) throw ConfigError("lambda", "required when kind = lambda");
  try {
    return RepresentationKind::lambda(parse_rational(lambda));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("lambda", e.what());
  }
}

inline Grid default_verify_grid() {
  Grid grid;
  for (double s : {-0.5, -0.3, -0.1, 0.1, 0.3, 0.5}) {
    for (double t : {-0.5, -0.3, -0.1, 0.1, 0.3, 0.5}) grid.emplace_back(s, t);
  }
  return grid;
}

/// Fills defaults and checks every invariant; throws ConfigError.
inline void finalize(RunConfig& cfg) {
  if (cfg.command != "verify" && cfg.command != "sweep") {
    throw ConfigError("command", "expected verify or sweep, got '" + cfg.command + "'");
  }
  const RepresentationKind kind = cfg.representation();
  if (!kind.is_lambda() && !cfg.lambda.empty()) throw ConfigError("lambda", "only valid with kind = lambda");
  if (cfg.dims.empty()) {
    cfg.dims = cfg.command == "sweep" ? std::vector<Eigen::Index>{16, 32, 64, 128}
                                      : std::vector<Eigen::Index>{64};
  }
  for (Eigen::Index d : cfg.dims) {
    if (d < 2) throw ConfigError("dim", "dimension must be >= 2, got " + std::to_string(d));
    if (kind.is_lambda() && d % 2 == 0) {
      throw ConfigError("dim", "Lambda windows are symmetric, so the dimension must be odd");
    }
    if (cfg.margin && *cfg.margin >= d) {
      throw ConfigError("margin", "margin " + std::to_string(*cfg.margin) + " leaves nothing of D = " +
                                      std::to_string(d));
    }
  }
  if (cfg.command == "sweep") {
    if (cfg.dims.size() < 2) throw ConfigError("dims", "a sweep needs at least two dimensions");
    for (std::size_t i = 1; i < cfg.dims.size(); ++i) {
      if (cfg.dims[i] <= cfg.dims[i - 1]) throw ConfigError("dims", "dimensions must increase");
    }
  }
  if (cfg.grid.empty()) cfg.grid = cfg.command == "sweep" ? Grid{{0.3, 0.3}} : default_verify_grid();
  if (cfg.tol && !(*cfg.tol > 0)) throw ConfigError("tol", "must be positive");
  if (cfg.format != "json" && cfg.format != "csv") {
    throw ConfigError("format", "expected json or csv, got '" + cfg.format + "'");
  }
}

/// Reads a JSON config object; keys mirror the long command-line flags.
inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");

  RunConfig cfg;
  auto text = [&](const char* key) {
    const auto& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ConfigError(key, "expected a string or number");
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") cfg.kind = text("kind");
    else if (key == "lambda") cfg.lambda = text("lambda");
    else if (key == "dim") cfg.dims = {detail::parse_index("dim", text("dim"))};
    else if (key == "dims") {
      if (!value.is_array()) throw ConfigError("dims", "expected an array");
      cfg.dims.clear();
      for (const auto& d : value) {
        if (!d.is_number_integer()) throw ConfigError("dims", "expected integers");
        cfg.dims.push_back(d.get<Eigen::Index>());
      }
    } else if (key == "margin") cfg.margin = parse_margin(text("margin"));
    else if (key == "grid") {
      if (value.is_string()) {
        cfg.grid = parse_grid(value.get<std::string>());
        continue;
      }
      if (!value.is_array()) throw ConfigError("grid", "expected \"s,t;...\" or [[s, t], ...]");
      for (const auto& p : value) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
          throw ConfigError("grid", "each point must be [s, t]");
        }
        cfg.grid.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
    } else if (key == "tol") {
      if (!value.is_number()) throw ConfigError("tol", "expected a number");
      cfg.tol = value.get<double>();
    } else if (key == "format") cfg.format = text("format");
    else if (key == "out") cfg.out = text("out");
    else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "precision") cfg.precision = parse_precision(text("precision"));
    else throw ConfigError(key, "unknown setting");
  }
  return cfg;
}

}  // namespace ccr
