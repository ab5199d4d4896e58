#include <gtest/gtest.h>

#include "ywkit/nls.hpp"

using namespace ywkit;

namespace {

QMatrix r_matrix(const Scalar& x, int n) {
  return QMatrix::identity(n * n) - detail::swap_matrix(n) * (1 / x);
}

QMatrix embed(const QMatrix& two_site, int s1, int s2, int n) {
  // Conjugate a (1,2) operator into slots (s1, s2) of three sites by permutation.
  const int d = n * n * n;
  auto index = [&](int a, int b, int c) { return (a * n + b) * n + c; };
  QMatrix out(d, d);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int a2 = 0; a2 < n; ++a2)
          for (int b2 = 0; b2 < n; ++b2) {
            int in[3] = {a, b, c}, outv[3] = {a, b, c};
            outv[s1] = a2;
            outv[s2] = b2;
            const Scalar& v = two_site(a2 * n + b2, in[s1] * n + in[s2]);
            if (is_zero(v)) continue;
            const int third = 3 - s1 - s2;
            if (in[third] != outv[third]) continue;
            out(index(outv[0], outv[1], outv[2]), index(a, b, c)) += v;
          }
  return out;
}

}  // namespace

TEST(Sector, Construction) {
  EXPECT_EQ(build_sector({}, 2).dim(), 1);
  auto s = build_sector({3, 0}, 2);
  EXPECT_EQ(s.dim(), 4);
  EXPECT_EQ(s.momenta, (std::vector<Scalar>{0, 3}));
  EXPECT_THROW(build_sector({1, 1}, 2), NlsError);
}

TEST(Exchange, SortedWordUnchanged) {
  QMatrix v(4, 1);
  v(1, 0) = 2;
  WordState s{{0, 3}, v};
  auto out = exchange_normal_form(s, 2);
  EXPECT_EQ(out.word, s.word);
  EXPECT_EQ(out.coeffs, v);
}

TEST(Exchange, TwoParticleSwap) {
  QMatrix v(4, 1);
  v(1, 0) = 1;  // a^dag_1(3) a^dag_2(0)
  auto out = exchange_normal_form(WordState{{3, 0}, v}, 2);
  EXPECT_EQ(out.word, (std::vector<Scalar>{0, 3}));
  EXPECT_EQ(out.coeffs, detail::swap_matrix(2) * r_matrix(Scalar(-3), 2) * v);
}

TEST(Exchange, PathIndependenceMatchesYbeOracle) {
  // Path independence at three sites is R12(b-a) R13(c-a) R23(c-b) = R23 R13 R12.
  const int n = 2;
  const Scalar a = 0, b = 1, c = 5;
  QMatrix lhs = embed(r_matrix(b - a, n), 0, 1, n) * embed(r_matrix(c - a, n), 0, 2, n) * embed(r_matrix(c - b, n), 1, 2, n);
  QMatrix rhs = embed(r_matrix(c - b, n), 1, 2, n) * embed(r_matrix(c - a, n), 0, 2, n) * embed(r_matrix(b - a, n), 0, 1, n);
  EXPECT_EQ(lhs, rhs);
  for (const auto& mom : {std::vector<Scalar>{0, 1, 5}, std::vector<Scalar>{0, 1, 5, 7}})
    for (int N : {2, 3}) {
      if (N == 3 && mom.size() == 4) continue;
      auto rep = verify_path_independence(build_sector(mom, N));
      EXPECT_TRUE(rep.passed()) << sector_label(build_sector(mom, N));
    }
  auto rep = verify_path_independence(build_sector({0, 1, 5, 7}, 2));
  EXPECT_EQ(rep.checks.front().payload.at("words"), "24");
}

TEST(Exchange, UnitarityOnlyUpToScalar) {
  const Scalar x = 3;
  QMatrix back = detail::swap_matrix(2) * r_matrix(-x, 2) * detail::swap_matrix(2) * r_matrix(x, 2);
  EXPECT_EQ(back, QMatrix::identity(4, 1 - 1 / (x * x)));
}

TEST(Charges, SingleParticle) {
  auto c = build_charges(build_sector({rational(2, 3)}, 2), 2);
  for (int a = 0; a < 4; ++a) {
    EXPECT_EQ(c.q0[a], QMatrix::unit(2, a / 2, a % 2));
    EXPECT_EQ(c.q1[a], QMatrix::unit(2, a / 2, a % 2) * rational(2, 3));
  }
  EXPECT_EQ(c.h[0], QMatrix::identity(2, 1));
}

TEST(Charges, LevelZeroClosesIntoGl) {
  auto c = build_charges(build_sector({0, 3}, 2), 3);
  GlData gl(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      QMatrix expect(4, 4);
      for (int e = 0; e < 4; ++e) expect = expect + c.q0[e] * gl.structure(a, b, e);
      EXPECT_EQ(detail::commutator(c.q0[a], c.q0[b]), expect);
    }
  EXPECT_EQ(c.h[0], QMatrix::identity(4, 2));
}

TEST(Charges, FTermIsCommutatorWithSwap) {
  // (1/2) f_a^{bc} t_b (x) t_c equals (1/2) [t_a (x) 1, P] on C^N (x) C^N.
  for (int N : {2, 3}) {
    auto with = build_charges_for_word({0, 0}, N, 0, true);
    auto without = build_charges_for_word({0, 0}, N, 0, false);
    QMatrix p = detail::swap_matrix(N);
    for (int a = 0; a < N * N; ++a) {
      QMatrix t1 = kron(QMatrix::unit(N, a / N, a % N), QMatrix::identity(N));
      EXPECT_EQ(with.q1[a] - without.q1[a], detail::commutator(t1, p) * rational(1, 2));
    }
  }
}

TEST(Symmetry, ExamplesPass) {
  auto s2 = build_sector({0, 3}, 2);
  EXPECT_TRUE(verify_symmetry(s2, build_charges(s2, 3)).passed());
  auto s3 = build_sector({0, 1, 5}, 2);
  EXPECT_TRUE(verify_symmetry(s3, build_charges(s3, 2)).passed());
  auto s33 = build_sector({rational(-1, 2), 2}, 3);
  EXPECT_TRUE(verify_symmetry(s33, build_charges(s33, 3)).passed());
}

TEST(Symmetry, DroppingFTermBreaksDescent) {
  auto s = build_sector({0, 3}, 2);
  auto rep = verify_symmetry(s, build_charges(s, 3, false), false);
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_EQ(rep.checks[0].status, Status::pass);
  EXPECT_EQ(rep.checks[1].status, Status::fail);
  EXPECT_EQ(rep.checks[1].payload.at("charge").substr(0, 2), "Q1");
}

TEST(SectorModule, TruncatesAndMatchesCharges) {
  EXPECT_TRUE(verify_truncation_on_sector(build_sector({}, 2)).passed());
  auto one = verify_truncation_on_sector(build_sector({7}, 2));
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(one.checks.size(), 1u);
  for (const auto& mom : {std::vector<Scalar>{0, 3}, std::vector<Scalar>{0, 1, 5}}) {
    auto rep = verify_truncation_on_sector(build_sector(mom, 2));
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.checks.size(), 2u);
  }
}
