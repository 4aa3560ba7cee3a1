#pragma once

// Exact matrix elements of a, a+ and J in the J-orthonormal basis, computed from the symbolic
// action on unnormalized vectors. Used to certify the closed forms in matrix_rep.hpp.

#include "ccr/algebra.hpp"
#include "ccr/exact_scalar.hpp"
#include "ccr/matrix_rep.hpp"
#include "ccr/representation.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace ccr {

/// sign * sqrt(square) with square a non-negative rational.
struct SignedSurd {
  int sign = 0;
  Rational square = 0;

  template <class Real = double>
  Real to_real() const {
    using std::sqrt;
    return Real(sign) * Real(sqrt(rational_to<Real>(square)));
  }

  /// The value as an element of Q(i, sqrt2), when it lies there.
  std::optional<ExactScalar> to_exact() const {
    if (sign == 0) return ExactScalar(0);
    auto root = [](const Rational& r) -> std::optional<Rational> {
      const Integer& n = boost::multiprecision::numerator(r);
      const Integer& d = boost::multiprecision::denominator(r);
      Integer rn = boost::multiprecision::sqrt(n);
      Integer rd = boost::multiprecision::sqrt(d);
      if (rn * rn != n || rd * rd != d) return std::nullopt;
      return Rational(rn, rd);
    };
    if (auto r = root(square)) return ExactScalar(Rational(sign) * *r);
    if (auto r = root(square / 2)) return ExactScalar(Rational(0), Rational(sign) * *r, 0, 0);
    return std::nullopt;
  }

  friend bool operator==(const SignedSurd&, const SignedSurd&) = default;
};

/// <psi_row, g psi_col> for basis indices row and col (not matrix positions).
inline SignedSurd exact_matrix_element(const RepresentationKind& kind, Generator g,
                                       std::int64_t row, std::int64_t col) {
  FormalState image = apply(OperatorExpr(g), FormalState::basis(kind, col));
  ExactScalar c = image.coefficient(row);
  if (c.is_zero()) return {};
  if (!c.is_rational()) throw std::logic_error("ladder coefficients are rational");
  // g e_col = c e_row, so g psi_col = c sqrt(|g_row| / |g_col|) psi_row
  Rational ratio = gram(kind, row) / gram(kind, col);
  if (ratio < 0) ratio = -ratio;
  return {sign(c.r0()), c.r0() * c.r0() * ratio};
}

/// Largest |numeric - exact| over every entry of A, ADag and Jm.
template <class Real>
Real oracle_deviation(const TruncatedRep<Real>& rep) {
  using std::abs;
  Real worst(0);
  const RepresentationKind& kind = rep.kind();
  for (Eigen::Index r = 0; r < rep.dim(); ++r) {
    for (Eigen::Index c = 0; c < rep.dim(); ++c) {
      const std::int64_t kr = rep.index_of(r);
      const std::int64_t kc = rep.index_of(c);
      const struct {
        Generator g;
        const CMatrix<Real>& m;
      } cases[] = {{Generator::A, rep.a()}, {Generator::ADag, rep.adag()}, {Generator::J, rep.jm()}};
      for (const auto& item : cases) {
        Real exact = exact_matrix_element(kind, item.g, kr, kc).template to_real<Real>();
        Real dev = abs(item.m(r, c) - Complex<Real>(exact));
        if (dev > worst) worst = dev;
      }
    }
  }
  return worst;
}

}  // namespace ccr
