#include "ccr/krein.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ccr;
using M = CMatrix<double>;
using V = CVector<double>;
using C = std::complex<double>;

namespace {

MetricContext<double> ctx(std::vector<int> signs) { return MetricContext<double>(Signature(signs)); }

V vec(std::initializer_list<C> xs) {
  V v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (C x : xs) v(k++) = x;
  return v;
}

M random_matrix(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> n;
  M m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = C(n(rng), n(rng));
  }
  return m;
}

std::vector<int> random_signs(std::mt19937_64& rng, std::size_t d) {
  std::bernoulli_distribution coin;
  std::vector<int> s(d);
  for (auto& x : s) x = coin(rng) ? 1 : -1;
  return s;
}

}  // namespace

TEST(Signature, RejectsNonUnitEntries) {
  EXPECT_THROW(Signature({1, 0}), std::invalid_argument);
  Signature s({1, -1, -1});
  EXPECT_EQ(s.positive_count(), 1u);
  EXPECT_EQ(s.negative_count(), 2u);
}

TEST(MetricContext, JSquaresToIdentityExactly) {
  auto m = ctx({1, -1, 1, -1, -1});
  M j2 = m.j() * m.j();
  EXPECT_TRUE(j2 == M::Identity(5, 5));
  EXPECT_TRUE(m.j() == m.j().adjoint());
  EXPECT_FALSE(m.positive_definite());
  EXPECT_TRUE(ctx({1, 1}).positive_definite());
}

TEST(IndefiniteDot, Examples) {
  auto m = ctx({1, -1});
  EXPECT_EQ(indefinite_dot(m, vec({0, 1}), vec({0, 1})), C(-1));
  EXPECT_EQ(indefinite_dot(m, vec({0, 0}), vec({0, 0})), C(0));
  EXPECT_EQ(indefinite_dot(m, vec({1, 1}), vec({1, -1})), C(2));
  EXPECT_THROW(indefinite_dot(m, vec({1}), vec({1, 1})), std::invalid_argument);
}

TEST(JDot, Examples) {
  auto m = ctx({1, -1});
  EXPECT_EQ(j_dot(m, vec({0, 1}), vec({0, 1})), C(1));
  EXPECT_EQ(j_dot(m, vec({1, 1}), vec({1, 1})), C(2));
  EXPECT_THROW(j_dot(m, vec({1, 1, 1}), vec({1, 1})), std::invalid_argument);
}

TEST(JDot, MatchesIndefiniteDotThroughJ) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    auto m = ctx(random_signs(rng, 7));
    V x(7), y(7);
    for (int k = 0; k < 7; ++k) {
      x(k) = C(n(rng), n(rng));
      y(k) = C(n(rng), n(rng));
    }
    EXPECT_LE(std::abs(indefinite_dot(m, x, y) - j_dot(m, x, m.apply_j(y))), 1e-14);
    EXPECT_GE(j_dot(m, x, x).real(), 0.0);
    EXPECT_NEAR(std::abs(indefinite_dot(m, x, y) - std::conj(indefinite_dot(m, y, x))), 0.0, 1e-14);
  }
}

TEST(PlusAdjoint, Examples) {
  auto m = ctx({1, -1, 1});
  EXPECT_TRUE(plus_adjoint(m, m.j()) == m.j());
  EXPECT_TRUE(plus_adjoint(m, M(M::Identity(3, 3))) == M::Identity(3, 3));
  EXPECT_THROW(plus_adjoint(m, M(M::Identity(2, 2))), std::invalid_argument);
}

TEST(PlusAdjoint, InvolutionAndFormula) {
  std::mt19937_64 rng(32);
  for (Eigen::Index d : {1, 2, 5, 16}) {
    auto m = ctx(random_signs(rng, static_cast<std::size_t>(d)));
    M a = random_matrix(rng, d);
    EXPECT_TRUE(plus_adjoint(m, plus_adjoint(m, a)) == a);
    EXPECT_LE(max_abs(M(plus_adjoint(m, a) - m.j() * a.adjoint() * m.j())), 1e-14);
  }
}

TEST(PlusAdjoint, DefinesIndefiniteAdjoint) {
  // (A x, y) = (x, A+ y)
  std::mt19937_64 rng(33);
  std::normal_distribution<double> n;
  auto m = ctx({1, -1, -1, 1});
  M a = random_matrix(rng, 4);
  V x(4), y(4);
  for (int k = 0; k < 4; ++k) {
    x(k) = C(n(rng), n(rng));
    y(k) = C(n(rng), n(rng));
  }
  EXPECT_LE(std::abs(indefinite_dot(m, V(a * x), y) - indefinite_dot(m, x, V(plus_adjoint(m, a) * y))),
            1e-12);
}

TEST(CheckJSelfAdjoint, Examples) {
  auto m = ctx({1, 1, 1});
  M diag = M::Zero(3, 3);
  diag.diagonal() << 1, 2, 3;
  auto r = check_j_selfadjoint(m, diag, 1e-12);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_TRUE(r.ok);

  M ladder = M::Zero(3, 3);
  ladder(0, 1) = 1;
  ladder(1, 2) = std::sqrt(2.0);
  auto bad = check_j_selfadjoint(m, ladder, 1e-12);
  EXPECT_NEAR(bad.residual, std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(bad.ok);
  EXPECT_THROW(check_j_selfadjoint(m, diag, 0.0), std::invalid_argument);
}
