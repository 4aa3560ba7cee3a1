#pragma once

#include <Eigen/Dense>

#include <complex>

namespace ccr {

/// Complex type paired with a real scalar. Specialized in ccr/quad.hpp.
template <class Real>
struct complex_of {
  using type = std::complex<Real>;
};

template <class Real>
using Complex = typename complex_of<Real>::type;

template <class Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Largest entry magnitude.
template <class Derived>
auto max_abs(const Eigen::MatrixBase<Derived>& m) {
  using RealT = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.size() == 0) return RealT(0);
  return RealT(m.cwiseAbs().maxCoeff());
}

/// Spectral norm via the largest eigenvalue of M^dagger M.
template <class Real>
Real operator_norm(const CMatrix<Real>& m) {
  using std::sqrt;
  if (m.size() == 0) return Real(0);
  CMatrix<Real> gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(gram, Eigen::EigenvaluesOnly);
  Real top = es.eigenvalues()(es.eigenvalues().size() - 1);
  return top > Real(0) ? Real(sqrt(top)) : Real(0);
}

template <class Real>
Complex<Real> imaginary_unit() {
  return Complex<Real>(Real(0), Real(1));
}

}  // namespace ccr
