#include <gtest/gtest.h>

#include "ywkit/drinfeld_fit.hpp"

using namespace ywkit;

namespace {

SuperPoly param(int id) { return SuperPoly::generator(parameter_gen(id)); }

// Cubic term from structure constants alone: the trace pairing
// tr(A [B, C]) written as A^e [B, C]^z eta_{ez}, no matrix products.
SuperPoly cubic_oracle(const DrinfeldFitter& fit, int a, int b, int c) {
  const auto& sl = fit.sl();
  const int d = sl.dim();
  std::vector<SuperPoly> q0(d), dual(d);
  for (int x = 0; x < d; ++x) q0[x] = fit.phi(1, sl.x[x]);
  for (int p = 0; p < d; ++p)
    for (int x = 0; x < d; ++x)
      if (!is_zero(sl.eta_inv[p][x])) dual[p] += q0[x] * sl.eta_inv[p][x];
  SuperPoly out;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int r = 0; r < d; ++r) {
        Scalar k = 0;
        for (int x = 0; x < d; ++x) {
          Scalar fx = sl.structure(b, q, x);
          if (is_zero(fx)) continue;
          for (int y = 0; y < d; ++y) {
            Scalar fy = sl.structure(c, r, y);
            if (is_zero(fy)) continue;
            for (int z = 0; z < d; ++z) {
              Scalar fz = sl.structure(x, y, z);
              if (is_zero(fz)) continue;
              for (int e = 0; e < d; ++e) k += sl.structure(a, p, e) * fx * fy * fz * sl.eta[e][z];
            }
          }
        }
        if (!is_zero(k)) out += dual[p] * dual[q] * dual[r] * k;
      }
  return out;
}

}  // namespace

TEST(SlBasis, TraceFormInverse) {
  for (int n : {2, 3}) {
    auto s = make_sl_basis(n);
    for (int a = 0; a < s.dim(); ++a)
      for (int b = 0; b < s.dim(); ++b) {
        Scalar acc = 0;
        for (int c = 0; c < s.dim(); ++c) acc += s.eta[a][c] * s.eta_inv[c][b];
        EXPECT_EQ(acc, Scalar(a == b ? 1 : 0));
      }
  }
}

TEST(SlBasis, StructureConstantsAntisymmetric) {
  auto s = make_sl_basis(3);
  for (int a = 0; a < s.dim(); ++a)
    for (int b = 0; b < s.dim(); ++b)
      for (int c = 0; c < s.dim(); ++c) EXPECT_EQ(s.structure(a, b, c), -s.structure(b, a, c));
}

TEST(CubicTerm, MatchesStructureConstantOracle) {
  DrinfeldFitter fit(3, 3);
  const int d = fit.sl().dim();
  int checked = 0;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; c += 2) {
        EXPECT_EQ(fit.jacobi_cubic(a, b, c), cubic_oracle(fit, a, b, c)) << a << b << c;
        ++checked;
      }
  EXPECT_GT(checked, 10);
}

TEST(SolveParameterSystem, LinearThenQuadratic) {
  std::vector<SuperPoly> eqs{SuperPoly(Scalar(-1)) - param(1) * Scalar(2), param(3) - param(1) * param(1)};
  auto out = solve_parameter_system(eqs, {1, 3});
  ASSERT_TRUE(out.solution);
  EXPECT_EQ(out.solution->values.at(1), rational(-1, 2));
  EXPECT_EQ(out.solution->values.at(3), rational(1, 4));
}

TEST(SolveParameterSystem, BranchesOverRoots) {
  // x^2 = 4 and x y = -6 : only the branch x = -2 fixes y = 3; both work.
  std::vector<SuperPoly> eqs{param(0) * param(0) - SuperPoly(Scalar(4)), param(0) * param(1) + SuperPoly(Scalar(6)),
                             param(1) - SuperPoly(Scalar(3))};
  auto out = solve_parameter_system(eqs, {0, 1});
  ASSERT_TRUE(out.solution);
  EXPECT_EQ(out.solution->values.at(0), Scalar(-2));
}

TEST(SolveParameterSystem, ReportsInconsistency) {
  std::vector<SuperPoly> eqs{param(0) - SuperPoly(Scalar(1)), param(0) * param(0) - SuperPoly(Scalar(2))};
  auto out = solve_parameter_system(eqs, {0});
  EXPECT_FALSE(out.solution);
  EXPECT_FALSE(out.failure.empty());
}

TEST(SolveParameterSystem, IrrationalRootFails) {
  auto out = solve_parameter_system({param(0) * param(0) - SuperPoly(Scalar(2))}, {0});
  EXPECT_FALSE(out.solution);
}

TEST(DrinfeldFit, JacobiCubicAtThree) {
  auto fit = fit_jacobi(3);
  ASSERT_TRUE(fit.solved) << fit.failure << " " << fit.residual;
  EXPECT_EQ(fit.values.at("c1_square"), rational(-1, 2));
  EXPECT_FALSE(is_zero(fit.values.at("lambda")));
  // Central directions drop out of the identity.
  EXPECT_EQ(fit.free_parameters, (std::vector<std::string>{"c0_linear", "c2_trace"}));
}

TEST(DrinfeldFit, JacobiResidualVanishesAtSolution) {
  DrinfeldFitter fitter(3, 3);
  auto fit = fit_jacobi(3);
  ASSERT_TRUE(fit.solved);
  std::map<int, Scalar> values{{kC0, Scalar(7)}, {kC1, fit.values.at("c1_square")}, {kC2, rational(-3, 5)},
                               {kLambda, fit.values.at("lambda")}};
  for (const auto& r : fitter.jacobi_residuals(false, 2)) EXPECT_TRUE(evaluate_parameters(r, values).is_zero());
}

TEST(DrinfeldFit, PureLevelTwoNeedsCorrectionAtThree) {
  auto fit = fit_jacobi(3, true);
  EXPECT_FALSE(fit.solved);
}

TEST(DrinfeldFit, QuarticAtTwo) {
  auto fit = fit_sl2();
  ASSERT_TRUE(fit.solved) << fit.failure << " " << fit.residual;
  EXPECT_FALSE(is_zero(fit.values.at("lambda")));
}

TEST(DrinfeldFit, ReportShape) {
  auto rep = fit_drinfeld_level_one(2);
  EXPECT_TRUE(rep.passed());
  ASSERT_EQ(rep.checks.size(), 2u);
  EXPECT_EQ(rep.checks[0].payload.at("beta"), "1/1");
  EXPECT_THROW(fit_drinfeld_level_one(4), std::invalid_argument);
}
