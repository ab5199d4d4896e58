#include <gtest/gtest.h>

#include "ywkit/modules.hpp"

using namespace ywkit;

namespace {

std::vector<EvaluationDatum> factors(const Signature& sig, std::vector<Scalar> as) {
  std::vector<EvaluationDatum> out;
  for (const auto& a : as) out.push_back({sig, a});
  return out;
}

// Mode relations of the plain Yangian, independent of the R-matrix route:
// [T_{r+1}^{ij}, T_s^{kl}] - [T_r^{ij}, T_{s+1}^{kl}] = T_r^{kj} T_s^{il} - T_s^{kj} T_r^{il}.
bool mode_relations_hold(const ModuleData& m) {
  const int n = m.n();
  auto t = [&](int level, int i, int j) { return level <= m.p ? m.t(level, i, j) : QMatrix(m.dim, m.dim); };
  for (int r = 0; r <= m.p; ++r)
    for (int s = 0; s <= m.p; ++s)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
              QMatrix lhs = t(r + 1, i, j) * t(s, k, l) - t(s, k, l) * t(r + 1, i, j) - t(r, i, j) * t(s + 1, k, l) +
                            t(s + 1, k, l) * t(r, i, j);
              QMatrix rhs = t(r, k, j) * t(s, i, l) - t(s, k, j) * t(r, i, l);
              if (!(lhs == rhs)) return false;
            }
  return true;
}

// Weights of a vector factor at a, by hand: the highest vector is the last
// basis vector, so mu^i = (u - a - delta_{iN}) / u.
std::vector<Scalar> closed_form_roots(const std::vector<Scalar>& as) {
  std::vector<Scalar> r;
  for (const auto& a : as) r.push_back(a + 1);
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST(EvaluationConvention, SelectedByRtt) {
  auto plain = select_evaluation_convention(Signature(2));
  // The transpose placement with a plus sign is tried first and fails.
  ASSERT_GE(plain.tried.size(), 2u);
  EXPECT_FALSE(plain.tried.front().second);
  EXPECT_EQ(plain.convention, (EvalConvention{EvalPlacement::transpose, -1, EvalGrading::none}));
  auto super = select_evaluation_convention(Signature(1, 2));
  EXPECT_EQ(super.convention, (EvalConvention{EvalPlacement::transpose, -1, EvalGrading::row}));
  EXPECT_EQ(select_evaluation_convention(Signature(1, 1)).convention, super.convention);
}

TEST(TensorModules, RttTruncationAndModeRelations) {
  for (auto sig : {Signature(2), Signature(3)})
    for (const auto& evs : {factors(sig, {0}), factors(sig, {0, 5}), factors(sig, {rational(1, 2), 2, 7})}) {
      auto m = tensor_modules(evs);
      EXPECT_EQ(m.p, static_cast<int>(evs.size()));
      EXPECT_TRUE(verify_truncation(m).passed()) << module_label(m);
      EXPECT_TRUE(verify_rtt(m).passed()) << module_label(m);
      EXPECT_TRUE(mode_relations_hold(m)) << module_label(m);
    }
}

TEST(TensorModules, SuperRtt) {
  for (auto sig : {Signature(1, 1), Signature(1, 2)}) {
    auto m = tensor_modules(factors(sig, {0, 3}));
    EXPECT_TRUE(verify_rtt(m).passed()) << module_label(m);
    EXPECT_TRUE(verify_truncation(m).passed());
  }
}

TEST(TensorModules, WithoutRenormalizationTheSeriesDoesNotTruncate) {
  auto sig = Signature(2);
  auto series = shifted_evaluation_series(sig, evaluation_convention(sig), Scalar(3), 3);
  EXPECT_FALSE(series[2][0].is_zero() && series[2][1].is_zero() && series[2][2].is_zero() && series[2][3].is_zero());
  auto m = evaluation_module({sig, Scalar(3)});
  EXPECT_TRUE(verify_truncation(m).passed());
}

TEST(TensorModules, MismatchedSignaturesRejected) {
  EXPECT_THROW(tensor_modules({{Signature(2), 0}, {Signature(3), 0}}), std::invalid_argument);
  EXPECT_THROW(tensor_modules({}), std::invalid_argument);
}

TEST(HighestWeight, ClosedFormRoundTrip) {
  const std::vector<std::vector<Scalar>> params{{0, 5}, {rational(1, 3), 4}, {0, 2, 7}, {rational(-1, 2), 3, 9}};
  for (int n : {2, 3})
    for (const auto& as : params) {
      auto m = tensor_modules(factors(Signature(n), as));
      auto hw = extract_highest_weight(m);
      ASSERT_TRUE(hw.ok) << hw.failure;
      auto d = drinfeld_from_weights(hw);
      ASSERT_TRUE(d.ok) << d.failure;
      for (int i = 0; i + 2 < n; ++i) EXPECT_TRUE(d.roots[i].empty());
      EXPECT_EQ(d.roots[n - 2], closed_form_roots(as));
      EXPECT_LE(d.total_degree(), m.p);
      EXPECT_EQ(d.rho.size(), static_cast<std::size_t>(n * m.p + 1));
    }
}

TEST(HighestWeight, RoundTripReport) {
  auto rep = verify_round_trip(factors(Signature(3), {0, 2, 7}));
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks.size(), 3u);
  EXPECT_EQ(rep.checks[1].payload.at("P2"), UPoly({-24, 35, -12, 1}).to_string());
}

TEST(HighestWeight, TrivialModuleHasNoDrinfeldRoots) {
  auto m = trivial_module(Signature(2), {1, rational(2, 3)});
  auto hw = extract_highest_weight(m);
  ASSERT_TRUE(hw.ok);
  auto d = drinfeld_from_weights(hw);
  ASSERT_TRUE(d.ok);
  EXPECT_EQ(d.total_degree(), 0);
  EXPECT_EQ(d.rho[1], rational(2, 3));
}

TEST(HighestWeight, NonTelescopingRatioRejected) {
  HighestWeightSeries hw;
  hw.ok = true;
  // mu^1 / mu^2 = (u - 1/2) / (u - 1): no integer string connects the roots.
  hw.mu = {{1, rational(-1, 2)}, {1, -1}};
  auto d = drinfeld_from_weights(hw);
  EXPECT_FALSE(d.ok);
  EXPECT_NE(d.failure.find("telescoping"), std::string::npos);
}

TEST(HighestWeight, DegeneratePointHasLargerKernel) {
  auto hw = extract_highest_weight(tensor_modules(factors(Signature(2), {0, -1})));
  EXPECT_FALSE(hw.ok);
  EXPECT_EQ(hw.kernel_dimension, 2);
}

TEST(Commutant, GenericSweepIsScalar) {
  auto rep = verify_irreducibility_sweep(Signature(2), {2, 3, 4, 5, 6});
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checks.size(), 5u);
  for (const auto& c : rep.checks) EXPECT_EQ(c.payload.at("cyclic_dimension"), "4");
  EXPECT_TRUE(verify_irreducibility_sweep(Signature(3), {2, rational(5, 2)}).passed());
}

TEST(Commutant, DirectSumDetected) {
  auto v = tensor_modules(factors(Signature(2), {0, 3}));
  EXPECT_EQ(commutant_dimension(direct_sum(v, v)), 4);
  auto w = tensor_modules(factors(Signature(2), {0, 4}));
  EXPECT_EQ(commutant_dimension(direct_sum(v, w)), 2);
  EXPECT_FALSE(irreducibility(direct_sum(v, w)).irreducible);
}

TEST(Commutant, IndecomposableReducibleIsInvisible) {
  // At a = 1 the highest vector spans a proper submodule, yet only scalars commute.
  auto m = tensor_modules(factors(Signature(2), {0, 1}));
  auto hw = extract_highest_weight(m);
  ASSERT_TRUE(hw.ok);
  EXPECT_EQ(cyclic_dimension(m, hw.xi), 3);
  EXPECT_EQ(commutant_dimension(m), 1);
}
