#include <gtest/gtest.h>

#include "ywkit/twisted.hpp"

using namespace ywkit;

namespace {

struct Case {
  int n;
  TwistClass cls;
  int p;
};

const Case kCases[] = {{2, TwistClass::plus, 1}, {2, TwistClass::minus, 1}, {3, TwistClass::plus, 1},
                       {2, TwistClass::plus, 2}, {2, TwistClass::minus, 2}};

// theta-transpose of a matrix unit as theta0 * G A^T G, G = sum_k theta_k E_{k, bar k}.
QMatrix transpose_oracle(const ThetaVector& t, const QMatrix& a) {
  const int n = t.sig.total();
  QMatrix g(n, n);
  for (int k = 0; k < n; ++k) g(k, bar_index(t.sig, k)) = t.theta[k];
  return g * a.transpose() * g * Scalar(t.theta0);
}

}  // namespace

TEST(Tau, MatchesGeneratingFunctionTranspose) {
  for (auto cls : {TwistClass::plus, TwistClass::minus})
    for (int n : {2, 3, 4}) {
      if (cls == TwistClass::minus && n % 2) continue;
      Signature sig(n);
      auto t = build_tau(make_theta(sig, cls), 2);
      for (int level = 1; level <= 2; ++level)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            // T^t(-u) = sum_ij T^{ij}(-u) E_ij^t; read off the entry E_ij^t lands on.
            QMatrix img = transpose_oracle(t.theta, QMatrix::unit(n, i, j));
            for (int k = 0; k < n; ++k)
              for (int l = 0; l < n; ++l) {
                if (is_zero(img(k, l))) continue;
                SuperPoly expect = mode(sig, level, i, j) * Scalar(img(k, l) * sign_pow(level));
                EXPECT_EQ(t.image(make_gen(sig, level, k, l)), expect) << n << " " << level << " " << k << l;
              }
          }
    }
}

TEST(Tau, LevelOneExampleNTwo) {
  Signature sig(2);
  auto t = build_tau(make_theta(sig, TwistClass::plus), 1);
  // The reflected transpose fixes the (1,2) slot when N = 2.
  EXPECT_EQ(t.image(make_gen(sig, 1, 0, 1)), mode(sig, 1, 0, 1) * Scalar(-1));
  EXPECT_EQ(t.image(make_gen(sig, 2, 0, 0)), mode(sig, 2, 1, 1));
}

TEST(Tau, InvolutiveAutomorphism) {
  for (const auto& c : kCases) {
    auto alg = YangianAlgebra::truncated(Signature(c.n), c.p);
    auto rep = verify_tau(build_tau(make_theta(Signature(c.n), c.cls), c.p), alg);
    EXPECT_TRUE(rep.passed()) << c.n << " p=" << c.p;
  }
  auto alg = YangianAlgebra::truncated(Signature(1, 2), 1);
  EXPECT_TRUE(verify_tau(build_tau(make_theta(Signature(1, 2), TwistClass::plus), 1), alg).passed());
}

TEST(Tau, WLiteralSignIsNotAnAutomorphismOnTModes) {
  auto alg = YangianAlgebra::truncated(Signature(2), 1);
  auto rep = verify_tau(build_tau(make_theta(Signature(2), TwistClass::minus), 1, TauConvention::wliteral), alg);
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_EQ(rep.checks[0].status, Status::pass);  // still an involution
  EXPECT_EQ(rep.checks[1].status, Status::fail);
}

TEST(SGenerators, LevelOneFormula) {
  for (auto [n, cls] : {std::pair{2, TwistClass::plus}, std::pair{2, TwistClass::minus}, std::pair{3, TwistClass::plus}}) {
    Signature sig(n);
    auto theta = make_theta(sig, cls);
    auto alg = YangianAlgebra::truncated(sig, 1);
    auto s = build_s(alg, build_tau(theta, 1));
    ASSERT_EQ(s.modes.size(), 3u);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(s.at(0, i, j), SuperPoly(i == j ? 1 : 0));
        SuperPoly expect = mode(sig, 1, i, j) -
                           mode(sig, 1, bar_index(sig, j), bar_index(sig, i)) * Scalar(theta[i] * theta[j]);
        EXPECT_EQ(s.at(1, i, j), expect);
      }
  }
}

TEST(SGenerators, LevelTwoIsProduct) {
  Signature sig(2);
  auto t = build_tau(make_theta(sig, TwistClass::plus), 1);
  auto s = build_s(YangianAlgebra::truncated(sig, 1), t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      SuperPoly expect;
      for (int k = 0; k < 2; ++k) expect += mode(sig, 1, i, k) * t.image(make_gen(sig, 1, k, j));
      EXPECT_EQ(s.at(2, i, j), expect);
    }
}

TEST(TwistedBracket, DisplayedFormHolds) {
  for (const auto& c : kCases) {
    Signature sig(c.n);
    auto alg = YangianAlgebra::truncated(sig, c.p);
    auto t = build_tau(make_theta(sig, c.cls), c.p);
    auto s = build_s(alg, t);
    EXPECT_TRUE(verify_twisted_bracket(alg, t, s, 1, 2).passed()) << c.n << " p=" << c.p;
  }
}

TEST(TwistedBracket, FlippedPrimedSignFails) {
  Signature sig(2);
  auto alg = YangianAlgebra::truncated(sig, 1);
  auto t = build_tau(make_theta(sig, TwistClass::minus), 1);
  auto rep = verify_twisted_bracket(alg, t, build_s(alg, t), -1);
  ASSERT_FALSE(rep.passed());
  EXPECT_TRUE(rep.checks.front().payload.count("modes"));
}

TEST(TwistedBracket, RejectsSuper) {
  Signature sig(1, 2);
  auto alg = YangianAlgebra::truncated(sig, 1);
  auto t = build_tau(make_theta(sig, TwistClass::plus), 1);
  EXPECT_THROW(verify_twisted_bracket(alg, t, build_s(alg, t)), std::invalid_argument);
}

TEST(SClosure, SoSpDimensions) {
  for (int n : {2, 3, 4})
    for (auto cls : {TwistClass::plus, TwistClass::minus}) {
      if (cls == TwistClass::minus && n % 2) continue;
      Signature sig(n);
      auto alg = YangianAlgebra::truncated(sig, 1);
      auto t = build_tau(make_theta(sig, cls), 1);
      auto rep = verify_s_closure(alg, t, build_s(alg, t));
      ASSERT_TRUE(rep.passed()) << n;
      const int expect = cls == TwistClass::plus ? n * (n - 1) / 2 : n * (n + 1) / 2;
      EXPECT_EQ(rep.checks.front().payload.at("dimension"), std::to_string(expect));
    }
}

TEST(SSymmetry, SuperClassical) {
  Signature sig(1, 2);
  auto alg = YangianAlgebra::truncated(sig, 1);
  auto t = build_tau(make_theta(sig, TwistClass::plus), 1);
  auto s = build_s(alg, t);
  // Classically only the leading part survives; the 1/(2u) term is of
  // quantum order and shows up as a level-one difference at level two.
  EXPECT_TRUE(verify_s_symmetry_classical(s, t, 0).passed());
  auto full = verify_s_symmetry_classical(s, t, 1);
  ASSERT_FALSE(full.passed());
  EXPECT_EQ(full.checks.front().payload.at("mode").substr(0, 2), "S2");
}

TEST(Fold, CountsTypesAndDescent) {
  for (const auto& c : kCases) {
    Signature sig(c.n);
    auto alg = YangianAlgebra::truncated(sig, c.p);
    auto t = build_tau(make_theta(sig, c.cls), c.p);
    auto f = fold_quotient(alg, t);
    EXPECT_TRUE(verify_fold(alg, f).passed()) << c.n << " p=" << c.p;
  }
  auto alg = YangianAlgebra::truncated(Signature(2), 2);
  auto f = fold_quotient(alg, build_tau(make_theta(Signature(2), TwistClass::plus), 2));
  EXPECT_EQ(f.counts, (std::vector<int>{1, 3}));
}

TEST(Fold, InvalidInputs) {
  auto alg = YangianAlgebra::truncated(Signature(3), 2);
  EXPECT_THROW(fold_quotient(alg, build_tau(make_theta(Signature(3), TwistClass::plus), 2)), TwistError);
  EXPECT_THROW(make_theta(Signature(3), TwistClass::minus), TwistError);
  auto sup = YangianAlgebra::truncated(Signature(1, 2), 1);
  EXPECT_THROW(fold_quotient(sup, build_tau(make_theta(Signature(1, 2), TwistClass::plus), 1)), TwistError);
}
