#pragma once

#include "ccr/exact_scalar.hpp"
#include "ccr/krein.hpp"
#include "ccr/numeric.hpp"
#include "ccr/representation.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccr {

/// Dimension-D Galerkin compression of (a, a+, J, N) in the J-orthonormal N-eigenbasis
/// psi_k = e_k / sqrt|(e_k, e_k)|.
///
/// Matrix row/column i holds the basis index first_index() + i. Nm is the compression of N
/// itself, so its diagonal is exact at every index, while ADag * A loses the truncated corner.
template <class Real = double>
class TruncatedRep {
 public:
  const RepresentationKind& kind() const { return kind_; }
  Eigen::Index dim() const { return a_.rows(); }
  std::int64_t first_index() const { return first_index_; }
  std::int64_t index_of(Eigen::Index row) const { return first_index_ + row; }

  const CMatrix<Real>& a() const { return a_; }
  const CMatrix<Real>& adag() const { return adag_; }
  const CMatrix<Real>& jm() const { return metric_.j(); }
  const CMatrix<Real>& nm() const { return nm_; }
  const MetricContext<Real>& metric() const { return metric_; }

  /// Labels in the original numbering: psi0.. (Fock), psi-1.. (anti-Fock), psi_{lambda+k}.
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      std::int64_t k = index_of(i);
      switch (kind_.tag()) {
        case RepresentationKind::Tag::Fock: out.push_back("psi" + std::to_string(k)); break;
        case RepresentationKind::Tag::AntiFock:
          out.push_back("psi" + std::to_string(-(k + 1)));
          break;
        case RepresentationKind::Tag::Lambda:
          out.push_back("psi[lambda" + std::string(k < 0 ? "" : "+") + std::to_string(k) + "]");
          break;
      }
    }
    return out;
  }

  /// Labels after the relabeling b = a+: psi~m = psi_{-(m+1)}.
  std::vector<std::string> b_labels() const {
    std::vector<std::string> out;
    for (Eigen::Index i = 0; i < dim(); ++i) out.push_back("psi~" + std::to_string(index_of(i)));
    return out;
  }

  /// Ladder operator of the positive-metric pair: a in Fock space, b = a+ for anti-Fock.
  CMatrix<Real> b() const {
    require_weyl_kind();
    return kind_.is_fock() ? a_ : adag_;
  }

  /// J-adjoint of b(): a+ in Fock space, b* = -a for anti-Fock.
  CMatrix<Real> b_star() const {
    require_weyl_kind();
    return kind_.is_fock() ? adag_ : CMatrix<Real>(-a_);
  }

  /// Number operator of the b-pair: N itself (Fock) or -N - 1 (anti-Fock).
  CMatrix<Real> number_tilde() const {
    require_weyl_kind();
    if (kind_.is_fock()) return nm_;
    return -nm_ - CMatrix<Real>::Identity(dim(), dim());
  }

  void require_weyl_kind() const {
    if (kind_.is_lambda()) {
      throw std::invalid_argument("no Weyl pair is constructed for the Lambda case");
    }
  }

 private:
  template <class R>
  friend TruncatedRep<R> build_rep(const RepresentationKind& kind, Eigen::Index dim);

  explicit TruncatedRep(RepresentationKind kind) : kind_(std::move(kind)) {}

  RepresentationKind kind_;
  std::int64_t first_index_ = 0;
  CMatrix<Real> a_;
  CMatrix<Real> adag_;
  CMatrix<Real> nm_;
  MetricContext<Real> metric_;
};

template <class Real = double>
TruncatedRep<Real> build_rep(const RepresentationKind& kind, Eigen::Index dim) {
  using std::sqrt;
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(dim));
  if (kind.is_lambda() && dim % 2 == 0) {
    throw std::invalid_argument("Lambda window {-K..K} needs odd dimension, got " +
                                std::to_string(dim));
  }

  TruncatedRep<Real> rep(kind);
  rep.first_index_ = kind.is_lambda() ? -static_cast<std::int64_t>(dim / 2) : 0;
  rep.a_ = CMatrix<Real>::Zero(dim, dim);
  rep.adag_ = CMatrix<Real>::Zero(dim, dim);
  rep.nm_ = CMatrix<Real>::Zero(dim, dim);
  std::vector<int> signs(static_cast<std::size_t>(dim), 1);

  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::int64_t k = rep.index_of(i);
    const Real root_k = sqrt(Real(k));
    const Real root_k1 = sqrt(Real(k + 1));
    switch (kind.tag()) {
      case RepresentationKind::Tag::Fock:
        // a psi_k = sqrt(k) psi_{k-1}, a+ psi_k = sqrt(k+1) psi_{k+1}
        if (i > 0) rep.a_(i - 1, i) = root_k;
        if (i + 1 < dim) rep.adag_(i + 1, i) = root_k1;
        rep.nm_(i, i) = Real(k);
        break;
      case RepresentationKind::Tag::AntiFock:
        // a psi~m = sqrt(m+1) psi~{m+1}, a+ psi~m = -sqrt(m) psi~{m-1}
        if (i + 1 < dim) rep.a_(i + 1, i) = root_k1;
        if (i > 0) rep.adag_(i - 1, i) = -root_k;
        rep.nm_(i, i) = Real(-(k + 1));
        signs[static_cast<std::size_t>(i)] = (k % 2 == 0) ? 1 : -1;
        break;
      case RepresentationKind::Tag::Lambda: {
        // a psi_k = sqrt|lam+k| psi_{k-1}, a+ psi_k = sign(lam+k+1) sqrt|lam+k+1| psi_{k+1}
        const Rational& lam = kind.lambda_value();
        const Rational down = lam + k;
        const Rational up = lam + k + 1;
        if (i > 0) rep.a_(i - 1, i) = sqrt(rational_to<Real>(abs(down)));
        if (i + 1 < dim) {
          Real mag = sqrt(rational_to<Real>(abs(up)));
          rep.adag_(i + 1, i) = up > 0 ? mag : Real(-mag);
        }
        rep.nm_(i, i) = rational_to<Real>(down);
        // all of lam+1, lam+2, ... are positive; lam, lam-1, ... are negative
        signs[static_cast<std::size_t>(i)] = (k >= 0 || (-k) % 2 == 0) ? 1 : -1;
        break;
      }
    }
  }
  rep.metric_ = MetricContext<Real>(Signature(std::move(signs)));
  return rep;
}

/// Compression onto the basis rows [lower, upper) that are clear of the truncation corners.
struct InteriorProjector {
  Eigen::Index lower = 0;
  Eigen::Index upper = 0;

  Eigen::Index size() const { return upper - lower; }

  template <class Derived>
  typename Derived::PlainObject compress(const Eigen::MatrixBase<Derived>& m) const {
    return m.block(lower, lower, size(), size());
  }
};

/// Drops `margin` basis vectors at each truncated edge: the top for Fock and anti-Fock, both
/// ends of the two-sided Lambda window.
inline InteriorProjector interior(const RepresentationKind& kind, Eigen::Index dim,
                                  Eigen::Index margin) {
  if (margin < 0) throw std::invalid_argument("margin must be non-negative");
  Eigen::Index lower = kind.is_lambda() ? margin : 0;
  Eigen::Index upper = dim - margin;
  if (upper - lower < 1) {
    throw std::invalid_argument("margin " + std::to_string(margin) +
                                " leaves no interior at dimension " + std::to_string(dim));
  }
  return {lower, upper};
}

template <class Real>
InteriorProjector interior(const TruncatedRep<Real>& rep, Eigen::Index margin) {
  return interior(rep.kind(), rep.dim(), margin);
}

/// Default margin for exponential-based checks: ceil(D/4).
inline Eigen::Index weyl_margin(Eigen::Index dim) { return (dim + 3) / 4; }

template <class Real = double>
struct PQPair {
  CMatrix<Real> p;
  CMatrix<Real> q;
};

/// P = (b - b*) / (i sqrt2), Q = (b + b*) / sqrt2. For anti-Fock this is
/// P = (a+ + a) / (i sqrt2), Q = (a+ - a) / sqrt2.
template <class Real>
PQPair<Real> build_pq(const TruncatedRep<Real>& rep) {
  using std::sqrt;
  rep.require_weyl_kind();
  const CMatrix<Real> b = rep.b();
  const CMatrix<Real> bs = rep.b_star();
  const Real root2 = sqrt(Real(2));
  const Complex<Real> i_root2 = imaginary_unit<Real>() * root2;
  PQPair<Real> out;
  out.p = (b - bs) / i_root2;
  out.q = (b + bs) / root2;
  return out;
}

/// Operator norm of [a, a+] - 1 compressed to the interior.
template <class Real>
Real commutator_residual(const TruncatedRep<Real>& rep, Eigen::Index margin) {
  const InteriorProjector proj = interior(rep, margin);
  CMatrix<Real> c = rep.a() * rep.adag() - rep.adag() * rep.a() -
                    CMatrix<Real>::Identity(rep.dim(), rep.dim());
  return operator_norm<Real>(proj.compress(c));
}

/// Eigenvalues of Nm, ascending. Nm is diagonal, so these are its diagonal entries.
template <class Real>
std::vector<Real> spectrum_n(const TruncatedRep<Real>& rep) {
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(rep.dim()));
  for (Eigen::Index i = 0; i < rep.dim(); ++i) out.push_back(Real(rep.nm()(i, i).real()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ccr
