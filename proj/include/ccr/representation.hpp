#pragma once

#include "ccr/algebra.hpp"
#include "ccr/exact_scalar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ccr {

/// One entry of the catalog of regular irreducible representations in a Krein space.
class RepresentationKind {
 public:
  enum class Tag { Fock, AntiFock, Lambda };

  static RepresentationKind fock() { return RepresentationKind(Tag::Fock, {}); }
  static RepresentationKind anti_fock() { return RepresentationKind(Tag::AntiFock, {}); }
  static RepresentationKind lambda(Rational value) {
    if (!(value > -1 && value < 0)) {
      throw std::invalid_argument("lambda must lie strictly inside (-1, 0), got " +
                                  rational_string(value));
    }
    return RepresentationKind(Tag::Lambda, std::move(value));
  }

  Tag tag() const { return tag_; }
  bool is_fock() const { return tag_ == Tag::Fock; }
  bool is_anti_fock() const { return tag_ == Tag::AntiFock; }
  bool is_lambda() const { return tag_ == Tag::Lambda; }

  /// Only meaningful for the Lambda case.
  const Rational& lambda_value() const {
    if (!is_lambda()) throw std::logic_error("lambda_value() on a non-Lambda representation");
    return lambda_;
  }

  /// Fock and anti-Fock bases start at e_0; the Lambda basis runs over all integers.
  bool has_index(std::int64_t k) const { return is_lambda() || k >= 0; }

  /// The J rewrite rule that is sound in this representation.
  JRule j_rule() const {
    switch (tag_) {
      case Tag::Fock: return JRule::Identity;
      case Tag::AntiFock: return JRule::Anticommute;
      case Tag::Lambda: return JRule::Opaque;
    }
    return JRule::Opaque;
  }

  std::string name() const {
    switch (tag_) {
      case Tag::Fock: return "fock";
      case Tag::AntiFock: return "antifock";
      case Tag::Lambda: return "lambda(" + rational_string(lambda_) + ")";
    }
    return "?";
  }

  friend bool operator==(const RepresentationKind&, const RepresentationKind&) = default;

 private:
  RepresentationKind(Tag tag, Rational lambda) : tag_(tag), lambda_(std::move(lambda)) {}

  Tag tag_;
  Rational lambda_{0};
};

/// Exact eigenvalue of N = a+ a on the basis vector e_k.
inline Rational number_eigenvalue(const RepresentationKind& kind, std::int64_t k) {
  switch (kind.tag()) {
    case RepresentationKind::Tag::Fock: return Rational(k);
    case RepresentationKind::Tag::AntiFock: return Rational(-(k + 1));
    case RepresentationKind::Tag::Lambda: return kind.lambda_value() + k;
  }
  return 0;
}

/// Indefinite norm (e_k, e_k) of the unnormalized basis vector, with (e_0, e_0) = 1.
inline Rational gram(const RepresentationKind& kind, std::int64_t k) {
  if (!kind.has_index(k)) throw std::out_of_range("basis index outside the representation");
  Rational g = 1;
  switch (kind.tag()) {
    case RepresentationKind::Tag::Fock:
      for (std::int64_t j = 1; j <= k; ++j) g *= j;
      return g;
    case RepresentationKind::Tag::AntiFock:
      for (std::int64_t j = 1; j <= k; ++j) g *= -j;
      return g;
    case RepresentationKind::Tag::Lambda: {
      const Rational& lam = kind.lambda_value();
      // (e_{j+1}, e_{j+1}) = (e_j, e_j) / (lam + j + 1)
      for (std::int64_t j = 0; j < k; ++j) g /= lam + j + 1;
      for (std::int64_t j = -1; j >= k; --j) g *= lam + j + 1;
      return g;
    }
  }
  return g;
}

/// Sign of (e_k, e_k); this is the action of J on e_k.
inline int gram_sign(const RepresentationKind& kind, std::int64_t k) {
  if (!kind.has_index(k)) throw std::out_of_range("basis index outside the representation");
  switch (kind.tag()) {
    case RepresentationKind::Tag::Fock: return 1;
    case RepresentationKind::Tag::AntiFock: return (k % 2 == 0) ? 1 : -1;
    case RepresentationKind::Tag::Lambda: {
      const Rational& lam = kind.lambda_value();
      int s = 1;
      for (std::int64_t j = 0; j < k; ++j) s *= sign(lam + j + 1);
      for (std::int64_t j = -1; j >= k; --j) s *= sign(lam + j + 1);
      return s;
    }
  }
  return 1;
}

/// Exact finite linear combination of the unnormalized basis vectors e_k.
class FormalState {
 public:
  using Coefficients = std::map<std::int64_t, ExactScalar>;

  explicit FormalState(RepresentationKind kind) : kind_(std::move(kind)) {}

  static FormalState basis(RepresentationKind kind, std::int64_t k, ExactScalar c = 1) {
    FormalState s(std::move(kind));
    s.add(k, std::move(c));
    return s;
  }

  const RepresentationKind& kind() const { return kind_; }
  const Coefficients& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  ExactScalar coefficient(std::int64_t k) const {
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? ExactScalar(0) : it->second;
  }

  void add(std::int64_t k, const ExactScalar& c) {
    if (!kind_.has_index(k)) {
      throw std::out_of_range("basis index e" + std::to_string(k) + " is not in the " +
                              kind_.name() + " representation");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  FormalState& operator+=(const FormalState& y) {
    require_same_kind(y);
    for (const auto& [k, c] : y.coeffs_) add(k, c);
    return *this;
  }
  FormalState& operator-=(const FormalState& y) {
    require_same_kind(y);
    for (const auto& [k, c] : y.coeffs_) add(k, -c);
    return *this;
  }
  friend FormalState operator+(FormalState x, const FormalState& y) { return x += y; }
  friend FormalState operator-(FormalState x, const FormalState& y) { return x -= y; }
  friend FormalState operator*(const ExactScalar& s, const FormalState& x) {
    FormalState out(x.kind_);
    for (const auto& [k, c] : x.coeffs_) out.add(k, s * c);
    return out;
  }

  friend bool operator==(const FormalState&, const FormalState&) = default;

  void require_same_kind(const FormalState& y) const {
    if (!(kind_ == y.kind_)) {
      throw std::invalid_argument("representation mismatch: " + kind_.name() + " vs " +
                                  y.kind_.name());
    }
  }

  /// "-3 · e2", "e0 - (1/2) · e3"; zero prints as "0".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : coeffs_) {
      std::string label = "e" + std::to_string(k);
      std::string term;
      if (c == ExactScalar(1)) {
        term = label;
      } else if (c == ExactScalar(-1)) {
        term = "-" + label;
      } else if (c.is_negative_monomial()) {
        term = "-" + (-c).to_string() + " · " + label;
      } else {
        std::string cs = c.to_string();
        term = (c.is_compound() ? "(" + cs + ")" : cs) + " · " + label;
      }
      if (first) {
        out = term;
        first = false;
      } else if (term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

 private:
  RepresentationKind kind_;
  Coefficients coeffs_;
};

namespace detail {

/// Applies one generator to c * e_k. Returns nothing when the image is zero.
inline std::optional<std::pair<std::int64_t, ExactScalar>> apply_generator(
    const RepresentationKind& kind, Generator g, std::int64_t k, const ExactScalar& c) {
  using Tag = RepresentationKind::Tag;
  switch (g) {
    case Generator::Id: return std::pair{k, c};
    case Generator::J: return std::pair{k, ExactScalar(gram_sign(kind, k)) * c};
    case Generator::A:
      switch (kind.tag()) {
        case Tag::Fock:
          if (k == 0) return std::nullopt;
          return std::pair{k - 1, ExactScalar(Rational(k)) * c};
        case Tag::AntiFock: return std::pair{k + 1, c};
        case Tag::Lambda: return std::pair{k - 1, c};
      }
      break;
    case Generator::ADag:
      switch (kind.tag()) {
        case Tag::Fock: return std::pair{k + 1, c};
        case Tag::AntiFock:
          if (k == 0) return std::nullopt;
          return std::pair{k - 1, ExactScalar(Rational(-k)) * c};
        case Tag::Lambda: return std::pair{k + 1, ExactScalar(kind.lambda_value() + k + 1) * c};
      }
      break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact action of an operator expression; words act right to left on each basis vector.
inline FormalState apply(const OperatorExpr& expr, const FormalState& state) {
  const RepresentationKind& kind = state.kind();
  FormalState out(kind);
  for (const auto& [word, wc] : expr.terms()) {
    for (const auto& [k0, c0] : state.coefficients()) {
      std::optional<std::pair<std::int64_t, ExactScalar>> cur{{k0, wc * c0}};
      for (auto g = word.rbegin(); g != word.rend() && cur; ++g) {
        cur = detail::apply_generator(kind, *g, cur->first, cur->second);
      }
      if (cur) out.add(cur->first, cur->second);
    }
  }
  return out;
}

/// Indefinite inner product, conjugate-linear in the first argument.
inline ExactScalar inner(const FormalState& x, const FormalState& y) {
  x.require_same_kind(y);
  ExactScalar sum(0);
  for (const auto& [k, cx] : x.coefficients()) {
    auto it = y.coefficients().find(k);
    if (it == y.coefficients().end()) continue;
    sum += cx.conj() * it->second * ExactScalar(gram(x.kind(), k));
  }
  return sum;
}

/// Positive J-inner product (x, Jy).
inline ExactScalar inner_j(const FormalState& x, const FormalState& y) {
  return inner(x, apply(op_j(), y));
}

/// Basis indices checked by verify_identity: 0..depth, or -depth..depth for Lambda.
inline std::int64_t lowest_checked_index(const RepresentationKind& kind, std::int64_t depth) {
  return kind.is_lambda() ? -depth : 0;
}

/// Exact agreement of lhs and rhs on every basis vector e_k with |k| <= depth.
inline bool verify_identity(const OperatorExpr& lhs, const OperatorExpr& rhs,
                            const RepresentationKind& kind, std::int64_t depth) {
  if (depth < 1) throw std::invalid_argument("verify_identity depth must be >= 1");
  for (std::int64_t k = lowest_checked_index(kind, depth); k <= depth; ++k) {
    FormalState e = FormalState::basis(kind, k);
    if (!(apply(lhs, e) == apply(rhs, e))) return false;
  }
  return true;
}

}  // namespace ccr
