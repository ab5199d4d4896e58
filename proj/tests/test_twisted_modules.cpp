#include <gtest/gtest.h>

#include "ywkit/twisted_modules.hpp"

using namespace ywkit;

namespace {

std::vector<EvaluationDatum> factors(const Signature& sig, std::vector<Scalar> as) {
  std::vector<EvaluationDatum> out;
  for (const auto& a : as) out.push_back({sig, a});
  return out;
}

// A PBW element acting on the defining representation: e_ab -> E_ab, words
// multiplied in their stored order.
QMatrix on_vector_rep(const Enveloping& u, const Enveloping::Element& x) {
  const int n = u.n();
  QMatrix out(n, n);
  for (const auto& [w, c] : x) {
    QMatrix m = QMatrix::identity(n);
    for (int g : w) m = m * QMatrix::unit(n, g / n, g % n);
    out = out + m * c;
  }
  return out;
}

}  // namespace

TEST(Enveloping, ProductsMatchDefiningRepresentation) {
  for (auto sig : {Signature(2), Signature(1, 2)}) {
    Enveloping u(sig);
    const int n = sig.total();
    for (int g = 0; g < n * n; ++g)
      for (int h = 0; h < n * n; ++h) {
        auto x = u.generator(g / n, g % n), y = u.generator(h / n, h % n);
        QMatrix expect = on_vector_rep(u, x) * on_vector_rep(u, y);
        EXPECT_EQ(on_vector_rep(u, u.multiply(x, y)), expect) << sig.to_string() << " " << g << " " << h;
      }
  }
}

TEST(Enveloping, OddSquareIsZeroOffDiagonal) {
  Enveloping u(Signature(1, 2));
  EXPECT_TRUE(u.multiply(u.generator(0, 1), u.generator(0, 1)).empty());
}

TEST(TauOnModules, TwistedSeriesSatisfiesRtt) {
  for (auto cls : {TwistClass::plus, TwistClass::minus}) {
    auto theta = make_theta(Signature(2), cls);
    EXPECT_TRUE(verify_tau_on_module(tensor_modules(factors(Signature(2), {0, 3})), theta).passed());
  }
  auto theta = make_theta(Signature(1, 2), TwistClass::plus);
  EXPECT_TRUE(verify_tau_on_module(tensor_modules(factors(Signature(1, 2), {0, 2})), theta).passed());
}

TEST(Rsrs, HoldsOnEvaluationTensors) {
  const std::vector<std::vector<Scalar>> params{{0}, {rational(1, 2)}, {0, 3}, {1, rational(-5, 2)}};
  for (auto cls : {TwistClass::plus, TwistClass::minus})
    for (const auto& as : params) {
      auto m = tensor_modules(factors(Signature(2), as));
      EXPECT_TRUE(verify_rsrs(m, make_theta(Signature(2), cls)).passed()) << module_label(m);
    }
}

TEST(Rsrs, UnflippedPartnerAndControlFail) {
  auto m = tensor_modules(factors(Signature(2), {0, 3}));
  for (auto cls : {TwistClass::plus, TwistClass::minus}) {
    auto theta = make_theta(Signature(2), cls);
    auto literal = verify_rsrs(m, theta, ReflectionPartner::q_minus);
    EXPECT_FALSE(literal.passed());
    EXPECT_NE(literal.checks.front().name.find("I-Q/(u+v)"), std::string::npos);
    EXPECT_FALSE(verify_rsrs(m, theta, ReflectionPartner::p_control).passed());
  }
}

TEST(Rsrs, RejectsSuper) {
  auto m = evaluation_module({Signature(1, 2), 0});
  EXPECT_THROW(verify_rsrs(m, make_theta(Signature(1, 2), TwistClass::plus)), std::invalid_argument);
}

TEST(SuperSymmetry, HoldsInEnvelopingAlgebra) {
  auto theta = make_theta(Signature(1, 2), TwistClass::plus);
  EXPECT_TRUE(verify_s_symmetry_enveloping(theta, 1).passed());
  // Dropping the correction, or flipping it, leaves a level-two defect.
  for (int c : {0, -1}) {
    auto rep = verify_s_symmetry_enveloping(theta, c);
    ASSERT_FALSE(rep.passed());
    EXPECT_EQ(rep.checks.front().payload.at("mode").substr(0, 2), "S2");
  }
}

TEST(SuperSymmetry, HoldsOnModules) {
  auto theta = make_theta(Signature(1, 2), TwistClass::plus);
  for (const auto& as : {std::vector<Scalar>{0}, std::vector<Scalar>{rational(1, 3)}, std::vector<Scalar>{0, 2}}) {
    auto m = tensor_modules(factors(Signature(1, 2), as));
    EXPECT_TRUE(verify_s_symmetry_module(m, theta, 1).passed()) << module_label(m);
    EXPECT_FALSE(verify_s_symmetry_module(m, theta, 0).passed());
  }
}

TEST(PlainSymmetry, CoefficientIsThetaZero) {
  for (auto cls : {TwistClass::plus, TwistClass::minus}) {
    auto theta = make_theta(Signature(2), cls);
    EXPECT_TRUE(verify_s_symmetry_enveloping(theta, theta.theta0).passed());
    EXPECT_FALSE(verify_s_symmetry_enveloping(theta, -theta.theta0).passed());
    auto m = tensor_modules(factors(Signature(2), {0, 3}));
    EXPECT_TRUE(verify_s_symmetry_module(m, theta, theta.theta0).passed());
  }
}
