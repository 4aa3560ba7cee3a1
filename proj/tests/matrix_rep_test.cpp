#include "ccr/matrix_rep.hpp"

#include <gtest/gtest.h>

#include "ccr/oracle.hpp"
#include "generators.hpp"

using namespace ccr;
using M = CMatrix<double>;

namespace {

const auto kAntiFock = RepresentationKind::anti_fock();
const auto kFock = RepresentationKind::fock();

std::vector<double> diag_values(const M& m) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m(i, i).real());
  return out;
}

}  // namespace

TEST(BuildRep, AntiFockNumberAndJ) {
  auto rep = build_rep<double>(kAntiFock, 3);
  EXPECT_EQ(diag_values(rep.nm()), (std::vector<double>{-1, -2, -3}));
  EXPECT_EQ(diag_values(rep.jm()), (std::vector<double>{1, -1, 1}));
  EXPECT_EQ(rep.labels(), (std::vector<std::string>{"psi-1", "psi-2", "psi-3"}));
  EXPECT_EQ(rep.b_labels(), (std::vector<std::string>{"psi~0", "psi~1", "psi~2"}));
}

TEST(BuildRep, FockTwoByTwo) {
  auto rep = build_rep<double>(kFock, 2);
  M expected(2, 2);
  expected << 0, 1, 0, 0;
  EXPECT_TRUE(rep.a() == expected);
  EXPECT_EQ(exact_matrix_element(kFock, Generator::A, 0, 1).to_exact(), ExactScalar(1));
}

TEST(BuildRep, AntiFockAdagEntryIsMinusSqrt2) {
  auto rep = build_rep<double>(kAntiFock, 4);
  // a+ psi-3 = -sqrt2 psi-2, i.e. column psi~2, row psi~1
  auto exact = exact_matrix_element(kAntiFock, Generator::ADag, 1, 2).to_exact();
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ(*exact, -ExactScalar::sqrt2());
  EXPECT_NEAR(std::abs(rep.adag()(1, 2) - exact->to_complex()), 0.0, 1e-15);
}

TEST(BuildRep, InvalidArguments) {
  EXPECT_THROW(build_rep<double>(kAntiFock, 1), std::invalid_argument);
  EXPECT_THROW(build_rep<double>(RepresentationKind::lambda(Rational(-1, 2)), 4), std::invalid_argument);
}

TEST(BuildRep, OracleEquivalenceAllKinds) {
  for (const auto& kind : gen::catalog()) {
    for (Eigen::Index d = 2; d <= 12; ++d) {
      if (kind.is_lambda() && d % 2 == 0) continue;
      auto rep = build_rep<double>(kind, d);
      EXPECT_LE(oracle_deviation(rep), 1e-14) << kind.name() << " D=" << d;
    }
  }
}

TEST(BuildRep, AdagIsPlusAdjointOfA) {
  for (const auto& kind : gen::catalog()) {
    auto rep = build_rep<double>(kind, 9);
    EXPECT_LE(max_abs(M(rep.adag() - plus_adjoint(rep.metric(), rep.a()))), 1e-15) << kind.name();
  }
  // Fock metric is positive, so a+ is the plain conjugate transpose
  auto fock = build_rep<double>(kFock, 9);
  EXPECT_TRUE(fock.adag() == fock.a().adjoint());
}

TEST(BuildRep, Signatures) {
  auto anti = build_rep<double>(kAntiFock, 8);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ(anti.metric().signature()[k], k % 2 == 0 ? 1 : -1);
  auto fock = build_rep<double>(kFock, 8);
  EXPECT_TRUE(fock.metric().positive_definite());
  auto lam = build_rep<double>(RepresentationKind::lambda(Rational(-1, 2)), 9);
  for (Eigen::Index i = 0; i + 1 < 9; ++i) {
    std::int64_t k = lam.index_of(i);
    int flip = lam.metric().signature()[static_cast<std::size_t>(i)] *
               lam.metric().signature()[static_cast<std::size_t>(i + 1)];
    EXPECT_EQ(flip, sign(Rational(-1, 2) + k + 1));
  }
}

TEST(SpectrumN, Examples) {
  EXPECT_EQ(spectrum_n(build_rep<double>(kAntiFock, 5)), (std::vector<double>{-5, -4, -3, -2, -1}));
  EXPECT_EQ(spectrum_n(build_rep<double>(kFock, 3)), (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(spectrum_n(build_rep<double>(RepresentationKind::lambda(Rational(-1, 2)), 5)),
            (std::vector<double>{-2.5, -1.5, -0.5, 0.5, 1.5}));
}

TEST(SpectrumN, NTildeIsNaturalNumbers) {
  auto rep = build_rep<double>(kAntiFock, 16);
  auto n_tilde = diag_values(rep.number_tilde());
  for (std::size_t m = 0; m < 16; ++m) EXPECT_EQ(n_tilde[m], static_cast<double>(m));
}

TEST(CommutatorResidual, InteriorIsClean) {
  EXPECT_LE(commutator_residual(build_rep<double>(kAntiFock, 16), 1), 1e-13);
  EXPECT_LE(commutator_residual(build_rep<double>(kFock, 16), 1), 1e-13);
  EXPECT_LE(commutator_residual(build_rep<double>(kAntiFock, 2), 1), 1e-15);
  EXPECT_LE(commutator_residual(build_rep<double>(RepresentationKind::lambda(Rational(-1, 3)), 15), 1),
            1e-13);
}

TEST(CommutatorResidual, CornerWithoutMargin) {
  // the hard cutoff leaves 1 - D in the last diagonal slot instead of 1
  for (Eigen::Index d : {4, 16, 33}) {
    EXPECT_NEAR(commutator_residual(build_rep<double>(kAntiFock, d), 0), static_cast<double>(d), 1e-9);
  }
  EXPECT_THROW(commutator_residual(build_rep<double>(kAntiFock, 4), 4), std::invalid_argument);
}

TEST(BuildPQ, AntiFockHermitianAndCanonical) {
  for (Eigen::Index d : {2, 3, 17, 64, 256}) {
    auto rep = build_rep<double>(kAntiFock, d);
    auto pq = build_pq(rep);
    EXPECT_LE(check_j_selfadjoint(rep.metric(), pq.p, 1e-12).residual, 1e-12);
    EXPECT_LE(check_j_selfadjoint(rep.metric(), pq.q, 1e-12).residual, 1e-12);
    auto proj = interior(rep, 1);
    M ccr = pq.p * pq.q - pq.q * pq.p + std::complex<double>(0, 1) * M::Identity(d, d);
    EXPECT_LE(max_abs(proj.compress(ccr)), 1e-12) << "D=" << d;
  }
  auto two = build_pq(build_rep<double>(kAntiFock, 2));
  EXPECT_TRUE(two.p == two.p.adjoint());
  EXPECT_TRUE(two.q == two.q.adjoint());
}

TEST(BuildPQ, FormulasInTermsOfA) {
  auto rep = build_rep<double>(kAntiFock, 10);
  auto pq = build_pq(rep);
  const double r2 = std::sqrt(2.0);
  M p = (rep.adag() + rep.a()) / std::complex<double>(0, r2);
  M q = (rep.adag() - rep.a()) / r2;
  EXPECT_LE(max_abs(M(pq.p - p)), 1e-15);
  EXPECT_LE(max_abs(M(pq.q - q)), 1e-15);
}

TEST(BuildPQ, SquaresGiveNumberOperator) {
  // P^2 + Q^2 = b b* + b* b = 2 b* b + 1 on the interior
  for (const auto& kind : {kAntiFock, kFock}) {
    auto rep = build_rep<double>(kind, 24);
    auto pq = build_pq(rep);
    M lhs = pq.p * pq.p + pq.q * pq.q;
    M rhs = 2.0 * rep.number_tilde() + M::Identity(24, 24);
    EXPECT_LE(max_abs(interior(rep, 1).compress(M(lhs - rhs))), 1e-12);
  }
}

TEST(BuildPQ, LambdaRejected) {
  EXPECT_THROW(build_pq(build_rep<double>(RepresentationKind::lambda(Rational(-1, 2)), 5)),
               std::invalid_argument);
}

TEST(Interior, Bounds) {
  auto p = interior(kAntiFock, 10, 3);
  EXPECT_EQ(p.lower, 0);
  EXPECT_EQ(p.upper, 7);
  auto l = interior(RepresentationKind::lambda(Rational(-1, 2)), 11, 2);
  EXPECT_EQ(l.lower, 2);
  EXPECT_EQ(l.upper, 9);
  EXPECT_THROW(interior(kAntiFock, 4, 4), std::invalid_argument);
  EXPECT_EQ(weyl_margin(64), 16);
  EXPECT_EQ(weyl_margin(10), 3);
}
