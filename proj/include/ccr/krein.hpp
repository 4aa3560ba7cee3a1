#pragma once

#include "ccr/numeric.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccr {

/// Signs of the fundamental decomposition K = K+ (+) K-, one per basis vector.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
      if (s != 1 && s != -1) throw std::invalid_argument("signature entries must be +1 or -1");
    }
  }

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t k) const { return signs_[k]; }
  const std::vector<int>& signs() const { return signs_; }

  std::size_t positive_count() const {
    return static_cast<std::size_t>(std::count(signs_.begin(), signs_.end(), 1));
  }
  std::size_t negative_count() const { return size() - positive_count(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<int> signs_;
};

/// Dimension, signature and the diagonal fundamental symmetry J of a finite Krein space.
template <class Real = double>
class MetricContext {
 public:
  MetricContext() = default;
  explicit MetricContext(Signature signature) : signature_(std::move(signature)) {
    const auto d = static_cast<Eigen::Index>(signature_.size());
    j_ = CMatrix<Real>::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      j_(k, k) = Complex<Real>(Real(signature_[static_cast<std::size_t>(k)]));
    }
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(signature_.size()); }
  const Signature& signature() const { return signature_; }
  const CMatrix<Real>& j() const { return j_; }
  bool positive_definite() const { return signature_.negative_count() == 0; }

  void require_vector(const CVector<Real>& x) const {
    if (x.size() != dim()) {
      throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                  " does not match metric dimension " + std::to_string(dim()));
    }
  }
  void require_matrix(const CMatrix<Real>& m) const {
    if (m.rows() != dim() || m.cols() != dim()) {
      throw std::invalid_argument("matrix shape does not match metric dimension " +
                                  std::to_string(dim()));
    }
  }

  /// J x, computed by sign flips.
  CVector<Real> apply_j(const CVector<Real>& x) const {
    require_vector(x);
    CVector<Real> out = x;
    for (Eigen::Index k = 0; k < dim(); ++k) {
      if (signature_[static_cast<std::size_t>(k)] < 0) out(k) = -out(k);
    }
    return out;
  }

 private:
  Signature signature_;
  CMatrix<Real> j_;
};

/// (x, y) = sum_k sigma_k conj(x_k) y_k.
template <class Real>
Complex<Real> indefinite_dot(const MetricContext<Real>& ctx, const CVector<Real>& x,
                             const CVector<Real>& y) {
  ctx.require_vector(x);
  ctx.require_vector(y);
  using std::conj;
  Complex<Real> sum(Real(0));
  for (Eigen::Index k = 0; k < ctx.dim(); ++k) {
    Complex<Real> term = conj(x(k)) * y(k);
    if (ctx.signature()[static_cast<std::size_t>(k)] < 0) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

/// (x, y)_J = (x, Jy): the ordinary positive product in the J-orthonormal basis.
template <class Real>
Complex<Real> j_dot(const MetricContext<Real>& ctx, const CVector<Real>& x,
                    const CVector<Real>& y) {
  ctx.require_vector(x);
  ctx.require_vector(y);
  return x.dot(y);
}

/// A+ = J A* J, with A* the conjugate transpose (adjoint in the J-inner product).
template <class Real>
CMatrix<Real> plus_adjoint(const MetricContext<Real>& ctx, const CMatrix<Real>& a) {
  ctx.require_matrix(a);
  CMatrix<Real> out = a.adjoint();
  for (Eigen::Index r = 0; r < ctx.dim(); ++r) {
    for (Eigen::Index c = 0; c < ctx.dim(); ++c) {
      if (ctx.signature()[static_cast<std::size_t>(r)] *
              ctx.signature()[static_cast<std::size_t>(c)] <
          0) {
        out(r, c) = -out(r, c);
      }
    }
  }
  return out;
}

template <class Real>
struct SelfAdjointCheck {
  Real residual;
  bool ok;
};

/// Self-adjointness in the J-inner product, which in the J-orthonormal basis is Hermiticity.
/// Residual is the largest entry of |A - A^dagger|.
template <class Real>
SelfAdjointCheck<Real> check_j_selfadjoint(const MetricContext<Real>& ctx, const CMatrix<Real>& a,
                                           Real tol) {
  ctx.require_matrix(a);
  if (!(tol > Real(0))) throw std::invalid_argument("tolerance must be positive");
  Real residual = max_abs(CMatrix<Real>(a - a.adjoint()));
  return {residual, residual <= tol};
}

}  // namespace ccr
