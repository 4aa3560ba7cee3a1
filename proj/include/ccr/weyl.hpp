#pragma once

#include "ccr/krein.hpp"
#include "ccr/matrix_rep.hpp"
#include "ccr/numeric.hpp"

#include <chrono>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccr {

/// Spectral decomposition H = V diag(w) V^dagger of a Hermitian generator, reused for every
/// parameter value of the one-parameter group exp(itH).
template <class Real = double>
class HermitianExponential {
 public:
  static constexpr double hermiticity_tolerance = 1e-10;

  explicit HermitianExponential(CMatrix<Real> generator) : generator_(std::move(generator)) {
    if (generator_.rows() != generator_.cols()) {
      throw std::invalid_argument("generator must be square");
    }
    Real skew = max_abs(CMatrix<Real>(generator_ - generator_.adjoint()));
    if (skew > Real(hermiticity_tolerance)) {
      throw std::invalid_argument("generator is not Hermitian (residual " +
                                  std::to_string(static_cast<double>(skew)) + ")");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> es(generator_);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    vectors_ = es.eigenvectors();
    values_ = es.eigenvalues();
  }

  const CMatrix<Real>& generator() const { return generator_; }
  const RVector<Real>& eigenvalues() const { return values_; }

  /// exp(itH); exactly the identity at t = 0.
  CMatrix<Real> at(Real t) const {
    using std::exp;
    const Eigen::Index d = generator_.rows();
    if (t == Real(0)) return CMatrix<Real>::Identity(d, d);
    CVector<Real> phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      phases(k) = exp(Complex<Real>(Real(0), t * values_(k)));
    }
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
  }

 private:
  CMatrix<Real> generator_;
  CMatrix<Real> vectors_;
  RVector<Real> values_;
};

template <class Real = double>
struct WeylOperator {
  CMatrix<Real> generator;
  Real t;
  CMatrix<Real> u;
};

template <class Real>
WeylOperator<Real> expm_hermitian(const CMatrix<Real>& h, Real t) {
  HermitianExponential<Real> ex(h);
  return {h, t, ex.at(t)};
}

/// Largest entry of |U^dagger U - 1|.
template <class Real>
Real unitarity_residual(const CMatrix<Real>& u) {
  return max_abs(CMatrix<Real>(u.adjoint() * u - CMatrix<Real>::Identity(u.rows(), u.cols())));
}

/// Cached exponentials of a (P, Q) pair.
template <class Real = double>
struct WeylPair {
  explicit WeylPair(const PQPair<Real>& pq) : p(pq.p), q(pq.q) {}
  HermitianExponential<Real> p;
  HermitianExponential<Real> q;
};

/// U(t) V(s) - e^{ist} V(s) U(t) with U(t) = exp(itP), V(s) = exp(isQ).
template <class Real>
CMatrix<Real> weyl_defect(const CMatrix<Real>& u, const CMatrix<Real>& v, Real s, Real t) {
  using std::exp;
  return u * v - exp(Complex<Real>(Real(0), s * t)) * (v * u);
}

/// Operator norm of the Weyl-relation defect compressed to the first D - margin basis vectors.
template <class Real>
Real weyl_residual(const WeylPair<Real>& pair, Real s, Real t, Eigen::Index margin) {
  const Eigen::Index d = pair.p.generator().rows();
  if (margin >= d || margin < 0) {
    throw std::invalid_argument("margin " + std::to_string(margin) + " out of range for dimension " +
                                std::to_string(d));
  }
  CMatrix<Real> defect = weyl_defect<Real>(pair.p.at(t), pair.q.at(s), s, t);
  return operator_norm<Real>(CMatrix<Real>(defect.topLeftCorner(d - margin, d - margin)));
}

template <class Real>
Real weyl_residual(const PQPair<Real>& pq, Real s, Real t, Eigen::Index margin) {
  return weyl_residual(WeylPair<Real>(pq), s, t, margin);
}

/// The Schrodinger pair in the Hermite-function (number) basis h_n.
template <class Real = double>
struct SchrodingerTarget {
  CMatrix<Real> c;
  CMatrix<Real> cdag;
  CMatrix<Real> p;
  CMatrix<Real> q;
};

template <class Real = double>
SchrodingerTarget<Real> schrodinger_target(Eigen::Index dim) {
  using std::sqrt;
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  SchrodingerTarget<Real> out;
  out.c = CMatrix<Real>::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) out.c(n - 1, n) = sqrt(Real(n));
  out.cdag = out.c.transpose();
  const Real root2 = sqrt(Real(2));
  out.q = (out.cdag + out.c) / root2;
  out.p = imaginary_unit<Real>() * (out.cdag - out.c) / root2;
  return out;
}

/// Diagonal unitary W with W psi~m = w_m h_m carrying the anti-Fock b-pair onto the
/// Schrodinger ladder pair.
template <class Real = double>
struct Intertwiner {
  CMatrix<Real> w;
  std::string source = "antifock b-basis psi~m";
  std::string target = "schrodinger number basis h_m";

  /// W X W^dagger.
  CMatrix<Real> conjugate(const CMatrix<Real>& x) const { return w * x * w.adjoint(); }
};

/// Derives the phases from W b W^dagger = c: starting at w_0 = 1, each
/// w_m = w_{m-1} c[m-1,m] / conj(b[m-1,m]). Requires |b[m-1,m]| = c[m-1,m].
template <class Real>
Intertwiner<Real> build_intertwiner(const TruncatedRep<Real>& rep) {
  using std::abs;
  using std::conj;
  if (!rep.kind().is_anti_fock()) {
    throw std::invalid_argument("intertwiner is built from an anti-Fock representation, got " +
                                rep.kind().name());
  }
  const Eigen::Index d = rep.dim();
  const CMatrix<Real> b = rep.b();
  const SchrodingerTarget<Real> target = schrodinger_target<Real>(d);
  Intertwiner<Real> out;
  out.w = CMatrix<Real>::Zero(d, d);
  out.w(0, 0) = Complex<Real>(Real(1));
  for (Eigen::Index m = 1; m < d; ++m) {
    const Complex<Real> bm = b(m - 1, m);
    const Complex<Real> cm = target.c(m - 1, m);
    if (abs(abs(bm) - abs(cm)) > Real(1e-12) * abs(cm)) {
      throw std::runtime_error("ladder magnitudes differ at level " + std::to_string(m));
    }
    out.w(m, m) = out.w(m - 1, m - 1) * cm / conj(bm);
  }
  return out;
}

template <class Real = double>
struct WeylGridEntry {
  double s = 0;
  double t = 0;
  Real intertwined;  ///< |W U(t)V(s) W^dagger - u(t)v(s)| on the interior
  Real source;       ///< Weyl-relation residual of the anti-Fock pair
  Real target;       ///< Weyl-relation residual of the Schrodinger pair
};

template <class Real = double>
struct EquivalenceReport {
  Eigen::Index dim = 0;
  Eigen::Index margin = 0;
  Real err_p;  ///< max-entry |W P W^dagger - p|
  Real err_q;  ///< max-entry |W Q W^dagger - q|
  Real err_w_unitary;
  Eigen::Index max_multiplicity = 0;
  std::vector<WeylGridEntry<Real>> grid;
  double wall_seconds = 0;
};

/// Largest multiplicity among the diagonal values of N.
template <class Real>
Eigen::Index max_eigen_multiplicity(const TruncatedRep<Real>& rep) {
  std::map<Real, Eigen::Index> counts;
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < rep.dim(); ++i) {
    best = std::max(best, ++counts[Real(rep.nm()(i, i).real())]);
  }
  return best;
}

template <class Real>
EquivalenceReport<Real> verify_von_neumann(const TruncatedRep<Real>& rep,
                                           const std::vector<std::pair<double, double>>& grid,
                                           Eigen::Index margin) {
  if (grid.empty()) throw std::invalid_argument("parameter grid is empty");
  if (margin < 0 || margin >= rep.dim()) throw std::invalid_argument("margin out of range");
  const auto start = std::chrono::steady_clock::now();

  const Intertwiner<Real> w = build_intertwiner(rep);
  const PQPair<Real> pq = build_pq(rep);
  const SchrodingerTarget<Real> target = schrodinger_target<Real>(rep.dim());

  EquivalenceReport<Real> report;
  report.dim = rep.dim();
  report.margin = margin;
  report.err_p = max_abs(CMatrix<Real>(w.conjugate(pq.p) - target.p));
  report.err_q = max_abs(CMatrix<Real>(w.conjugate(pq.q) - target.q));
  report.err_w_unitary = unitarity_residual<Real>(w.w);
  report.max_multiplicity = max_eigen_multiplicity(rep);

  const WeylPair<Real> source(pq);
  const WeylPair<Real> dest(PQPair<Real>{target.p, target.q});
  const Eigen::Index n = rep.dim() - margin;
  for (const auto& [s_in, t_in] : grid) {
    const Real s(s_in);
    const Real t(t_in);
    const CMatrix<Real> us = source.p.at(t);
    const CMatrix<Real> vs = source.q.at(s);
    const CMatrix<Real> ut = dest.p.at(t);
    const CMatrix<Real> vt = dest.q.at(s);
    CMatrix<Real> diff = w.conjugate(CMatrix<Real>(us * vs)) - ut * vt;
    WeylGridEntry<Real> entry{s_in, t_in, operator_norm<Real>(CMatrix<Real>(diff.topLeftCorner(n, n))),
                              operator_norm<Real>(CMatrix<Real>(
                                  weyl_defect<Real>(us, vs, s, t).topLeftCorner(n, n))),
                              operator_norm<Real>(CMatrix<Real>(
                                  weyl_defect<Real>(ut, vt, s, t).topLeftCorner(n, n)))};
    report.grid.push_back(entry);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Operator norm on the interior of P^2 + Q^2 - (2 N~ + 1), N~ the b-pair number operator.
template <class Real>
Real rellich_check(const PQPair<Real>& pq, const TruncatedRep<Real>& rep, Eigen::Index margin) {
  const InteriorProjector proj = interior(rep, margin);
  const Eigen::Index d = rep.dim();
  CMatrix<Real> lhs = pq.p * pq.p + pq.q * pq.q;
  CMatrix<Real> rhs = Real(2) * rep.number_tilde() + CMatrix<Real>::Identity(d, d);
  return operator_norm<Real>(proj.compress(CMatrix<Real>(lhs - rhs)));
}

}  // namespace ccr
