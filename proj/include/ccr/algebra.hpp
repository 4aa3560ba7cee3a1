#pragma once

#include "ccr/exact_scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace ccr {

/// Generators of the word algebra: a, its formal +-adjoint a+, the fundamental symmetry J, and 1.
enum class Generator : std::uint8_t { ADag, A, J, Id };

inline const char* generator_name(Generator g) {
  switch (g) {
    case Generator::A: return "a";
    case Generator::ADag: return "a+";
    case Generator::J: return "J";
    case Generator::Id: return "1";
  }
  return "?";
}

using Word = std::vector<Generator>;

/// Longer words first, then lexicographic by generator rank. Fixes printing order.
struct WordOrder {
  bool operator()(const Word& x, const Word& y) const {
    if (x.size() != y.size()) return x.size() > y.size();
    return x < y;
  }
};

/// Finite sum of exact-scalar weighted words. Zero coefficients are never stored.
class OperatorExpr {
 public:
  using Terms = std::map<Word, ExactScalar, WordOrder>;

  OperatorExpr() = default;
  OperatorExpr(ExactScalar c) { add_term({}, std::move(c)); }
  OperatorExpr(Generator g) { add_term(Word{g}, ExactScalar(1)); }

  static OperatorExpr identity() { return OperatorExpr(ExactScalar(1)); }
  static OperatorExpr word(Word w, ExactScalar c = ExactScalar(1)) {
    OperatorExpr e;
    e.add_term(std::move(w), std::move(c));
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// True when every word is empty (the expression is a multiple of the identity).
  bool is_scalar() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.first.empty(); });
  }
  ExactScalar scalar_part() const {
    auto it = terms_.find(Word{});
    return it == terms_.end() ? ExactScalar(0) : it->second;
  }

  void add_term(Word w, ExactScalar c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  OperatorExpr& operator+=(const OperatorExpr& y) {
    for (const auto& [w, c] : y.terms_) add_term(w, c);
    return *this;
  }
  OperatorExpr& operator-=(const OperatorExpr& y) {
    for (const auto& [w, c] : y.terms_) add_term(w, -c);
    return *this;
  }

  friend OperatorExpr operator+(OperatorExpr x, const OperatorExpr& y) { return x += y; }
  friend OperatorExpr operator-(OperatorExpr x, const OperatorExpr& y) { return x -= y; }
  friend OperatorExpr operator-(const OperatorExpr& x) { return ExactScalar(-1) * x; }

  friend OperatorExpr operator*(const ExactScalar& s, const OperatorExpr& x) {
    OperatorExpr out;
    for (const auto& [w, c] : x.terms_) out.add_term(w, s * c);
    return out;
  }

  /// Concatenation product; no rewriting happens here.
  friend OperatorExpr operator*(const OperatorExpr& x, const OperatorExpr& y) {
    OperatorExpr out;
    for (const auto& [wx, cx] : x.terms_) {
      for (const auto& [wy, cy] : y.terms_) {
        Word w = wx;
        w.insert(w.end(), wy.begin(), wy.end());
        out.add_term(std::move(w), cx * cy);
      }
    }
    return out;
  }

  friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

  std::string to_string() const;

  friend std::ostream& operator<<(std::ostream& os, const OperatorExpr& x) {
    return os << x.to_string();
  }

 private:
  Terms terms_;
};

inline std::string OperatorExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string body;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) body += " * ";
      body += generator_name(w[k]);
    }
    std::string term;
    if (w.empty()) {
      term = c.is_negative_monomial() ? "-" + (-c).to_string() : c.to_string();
    } else if (c == ExactScalar(1)) {
      term = body;
    } else if (c == ExactScalar(-1)) {
      term = "-" + body;
    } else if (c.is_negative_monomial()) {
      term = "-" + (-c).to_string() + " * " + body;
    } else {
      std::string cs = c.to_string();
      term = (c.is_compound() ? "(" + cs + ")" : cs) + " * " + body;
    }
    if (first) {
      out = term;
      first = false;
    } else if (!term.empty() && term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

inline const OperatorExpr& op_a() {
  static const OperatorExpr e(Generator::A);
  return e;
}
inline const OperatorExpr& op_adag() {
  static const OperatorExpr e(Generator::ADag);
  return e;
}
inline const OperatorExpr& op_j() {
  static const OperatorExpr e(Generator::J);
  return e;
}

inline OperatorExpr commutator(const OperatorExpr& x, const OperatorExpr& y) {
  return x * y - y * x;
}
inline OperatorExpr anticommutator(const OperatorExpr& x, const OperatorExpr& y) {
  return x * y + y * x;
}

/// How J is allowed to move past the ladder generators.
///
/// Anticommute is the anti-Fock Krein structure ({a,J} = {a+,J} = 0). Identity applies in
/// Fock space, where the metric is positive and J = 1. Opaque keeps J in place; only J*J -> 1
/// is used, which is sound in every representation.
enum class JRule { Anticommute, Identity, Opaque };

/// Rewrites to the unique canonical form under the chosen J rule.
///
/// Rules: a*a+ -> a+*a + 1, J*J -> 1, 1 dropped, and (Anticommute) J*a -> -a*J, J*a+ -> -a+*J.
/// Canonical words are a+^m a^n J^e with e in {0,1}; under Opaque they are runs of that shape
/// (without J) separated by single J factors.
inline OperatorExpr normal_order(const OperatorExpr& expr, JRule rule = JRule::Anticommute) {
  OperatorExpr::Terms pending;
  OperatorExpr result;

  auto push = [&pending](Word w, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = pending.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) pending.erase(it);
    }
  };

  for (const auto& [w, c] : expr.terms()) push(w, c);

  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    Word w = std::move(node.key());
    ExactScalar c = std::move(node.mapped());

    std::erase(w, Generator::Id);
    if (rule == JRule::Identity) std::erase(w, Generator::J);

    bool rewritten = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      Generator x = w[k];
      Generator y = w[k + 1];
      if (x == Generator::A && y == Generator::ADag) {
        Word swapped = w;
        swapped[k] = Generator::ADag;
        swapped[k + 1] = Generator::A;
        Word contracted = w;
        contracted.erase(contracted.begin() + static_cast<std::ptrdiff_t>(k),
                         contracted.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        push(std::move(swapped), c);
        push(std::move(contracted), c);
        rewritten = true;
      } else if (x == Generator::J && y == Generator::J) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(k),
                w.begin() + static_cast<std::ptrdiff_t>(k) + 2);
        push(std::move(w), c);
        rewritten = true;
      } else if (rule == JRule::Anticommute && x == Generator::J &&
                 (y == Generator::A || y == Generator::ADag)) {
        std::swap(w[k], w[k + 1]);
        push(std::move(w), -c);
        rewritten = true;
      }
      if (rewritten) break;
    }
    if (!rewritten) result.add_term(std::move(w), c);
  }
  return result;
}

/// Formal +-adjoint (adjoint in the indefinite product): reverse, swap a <-> a+, conjugate.
inline OperatorExpr adjoint_dagger(const OperatorExpr& expr) {
  OperatorExpr out;
  for (const auto& [w, c] : expr.terms()) {
    Word r(w.rbegin(), w.rend());
    for (auto& g : r) {
      if (g == Generator::A) {
        g = Generator::ADag;
      } else if (g == Generator::ADag) {
        g = Generator::A;
      }
    }
    out.add_term(std::move(r), c.conj());
  }
  return out;
}

/// Adjoint in the J-inner product: X* = J X+ J, normal ordered.
inline OperatorExpr adjoint_star(const OperatorExpr& expr, JRule rule = JRule::Anticommute) {
  return normal_order(op_j() * adjoint_dagger(expr) * op_j(), rule);
}

}  // namespace ccr
