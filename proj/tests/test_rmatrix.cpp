#include <gtest/gtest.h>

#include <vector>

#include "ywkit/rmatrix.hpp"

using namespace ywkit;

namespace {

using Dense = std::vector<std::vector<Scalar>>;

Dense dense_identity(int n) {
  Dense m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense out(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(a[i][k]))
        for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Super swap of two adjacent tensor factors (positions pos, pos+1) on
// (C^d)^{otimes 3}, built from its action on basis vectors.
Dense dense_swap(const Signature& sig, int pos) {
  const int d = sig.total();
  const int n = d * d * d;
  Dense m(n, std::vector<Scalar>(n));
  for (int idx = 0; idx < n; ++idx) {
    int digit[3] = {idx / (d * d), (idx / d) % d, idx % d};
    int s = sign_pow(sig.parity(digit[pos]) * sig.parity(digit[pos + 1]));
    std::swap(digit[pos], digit[pos + 1]);
    int target = (digit[0] * d + digit[1]) * d + digit[2];
    m[target][idx] = s;
  }
  return m;
}

Dense dense_r(const Dense& p, const Scalar& x) {
  Dense r = dense_identity(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) r[i][j] -= p[i][j] / x;
  return r;
}

Dense to_dense(const RingMatrix<Scalar>& m) {
  Dense out(m.dim(), std::vector<Scalar>(m.dim()));
  for (const auto& [ix, v] : m.entries()) out[ix.first][ix.second] = v;
  return out;
}

}  // namespace

TEST(Permutation, PlainTwoByTwo) {
  auto p = build_permutation(Signature(2));
  int expected[4][4] = {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(p.at(i, j), Scalar(expected[i][j]));
  EXPECT_EQ(p * p, RingMatrix<Scalar>::identity(4));
}

TEST(Permutation, GradedOddOddSign) {
  auto p = build_permutation(Signature(1, 1));
  EXPECT_EQ(p.at(3, 3), Scalar(-1));
  EXPECT_EQ(p.at(1, 2), Scalar(1));
  for (auto sig : {Signature(1, 1), Signature(2, 1), Signature(1, 2)}) {
    auto q = build_permutation(sig);
    EXPECT_EQ(q * q, RingMatrix<Scalar>::identity(sig.total() * sig.total()));
  }
}

TEST(RationalR, UnitAtOneAndUnitarity) {
  Signature sig(2);
  auto r = build_rational_r(sig);
  // x = 1: I - P
  auto p = to_dense(r.residue);
  Dense at_one = dense_r(p, Scalar(1));
  EXPECT_EQ(at_one[0][0], Scalar(0));
  EXPECT_EQ(at_one[1][1], Scalar(1));
  EXPECT_EQ(at_one[1][2], Scalar(-1));
  EXPECT_EQ(at_one[3][3], Scalar(0));
  for (int sig_n = 2; sig_n <= 4; ++sig_n) {
    auto rr = build_rational_r(Signature(sig_n));
    auto pd = to_dense(rr.residue);
    for (Scalar x : {rational(3, 2), rational(-7, 5), Scalar(4)}) {
      Dense prod = dense_mul(dense_r(pd, x), dense_r(pd, -x));
      Dense expected = dense_identity(pd.size());
      for (auto& row : expected)
        for (auto& c : row) c *= 1 - 1 / (x * x);
      ASSERT_EQ(prod, expected);
    }
    EXPECT_TRUE(check_unitarity(rr).passed());
  }
}

TEST(RationalR, YbeMatchesNumericOracle) {
  for (auto sig : {Signature(2), Signature(3), Signature(4), Signature(1, 1), Signature(2, 1), Signature(1, 2)}) {
    auto rep = check_ybe(build_rational_r(sig));
    EXPECT_TRUE(rep.passed()) << sig.to_string();
    // Oracle: P12, P23 from the basis action; P13 = P23 P12 P23.
    Dense p12 = dense_swap(sig, 0), p23 = dense_swap(sig, 1);
    Dense p13 = dense_mul(dense_mul(p23, p12), p23);
    ASSERT_EQ(to_dense(embed3(build_permutation(sig), 1, 2, sig)), p12);
    ASSERT_EQ(to_dense(embed3(build_permutation(sig), 2, 3, sig)), p23);
    ASSERT_EQ(to_dense(embed3(build_permutation(sig), 1, 3, sig)), p13);
    Scalar u = rational(7, 3), v = rational(-2, 5);
    Dense lhs = dense_mul(dense_mul(dense_r(p12, u - v), dense_r(p13, u)), dense_r(p23, v));
    Dense rhs = dense_mul(dense_mul(dense_r(p23, v), dense_r(p13, u)), dense_r(p12, u - v));
    EXPECT_EQ(lhs, rhs) << sig.to_string();
  }
}

TEST(RationalR, ScaledResidueIsRescaledSolution) {
  // I - 2P/x = R(x/2): still a solution.
  auto r = build_rational_r(Signature(2));
  r.residue = r.residue * Scalar(2);
  EXPECT_TRUE(check_ybe(r).passed());
}

TEST(RationalR, MutatedResidueFailsWithLocation) {
  auto r = build_rational_r(Signature(2));
  r.residue.set(0, 0, Scalar(2));
  auto rep = check_ybe(r);
  ASSERT_FALSE(rep.passed());
  const auto& c = rep.checks.front();
  EXPECT_TRUE(c.payload.count("entry"));
  EXPECT_TRUE(c.payload.count("monomial"));
}

TEST(QTensor, DisplayedFormAndTransposeAgree) {
  for (int n : {2, 3, 4}) {
    for (auto cls : {TwistClass::plus, TwistClass::minus}) {
      if (cls == TwistClass::minus && n % 2) continue;
      auto t = make_theta(Signature(n), cls);
      auto q = build_q_tensor(t);
      EXPECT_EQ(q, theta_transpose_slot1(build_permutation(Signature(n)), t));
    }
  }
  auto tp = make_theta(Signature(2), TwistClass::plus);
  auto q = build_q_tensor(tp);
  // sum_ij E_ij (x) E_{3-i,3-j}: entries at ((i, 3-i), (j, 3-j)) all +1.
  EXPECT_EQ(q.entries().size(), 4u);
  EXPECT_EQ(q.at(0 * 2 + 1, 0 * 2 + 1), Scalar(1));
  EXPECT_EQ(q.at(0 * 2 + 1, 1 * 2 + 0), Scalar(1));
  auto tm = make_theta(Signature(2), TwistClass::minus);
  auto qm = build_q_tensor(tm);
  EXPECT_EQ(qm.at(0 * 2 + 1, 1 * 2 + 0), Scalar(-1));
  EXPECT_EQ(qm.at(1 * 2 + 0, 1 * 2 + 0), Scalar(1));
}

TEST(Theta, Validation) {
  EXPECT_THROW(make_theta(Signature(3), TwistClass::minus), TwistError);
  EXPECT_THROW(make_theta(Signature(1, 1), TwistClass::plus), TwistError);
  EXPECT_THROW(make_theta(Signature(1, 2), TwistClass::minus), TwistError);
  auto t = make_theta(Signature(1, 2), TwistClass::plus);
  EXPECT_EQ(t.theta, (std::vector<int>{1, 1, -1}));
  auto m = make_theta(Signature(4), TwistClass::minus);
  EXPECT_EQ(m.theta, (std::vector<int>{1, 1, -1, -1}));
  EXPECT_EQ(bar_index(Signature(2, 2), 0), 1);
  EXPECT_EQ(bar_index(Signature(2, 2), 2), 3);
}

TEST(ClassicalYbe, PermutationPassesQFails) {
  for (int n : {2, 3, 4}) {
    Signature sig(n);
    EXPECT_TRUE(check_classical_ybe(build_permutation(sig), sig).passed());
    EXPECT_TRUE(check_classical_ybe(build_permutation(sig) * rational(5, 3), sig).passed());
  }
  for (auto sig : {Signature(1, 1), Signature(2, 1)}) EXPECT_TRUE(check_classical_ybe(build_permutation(sig), sig).passed());
  Signature two(2);
  auto q = build_q_tensor(make_theta(two, TwistClass::plus));
  EXPECT_FALSE(check_classical_ybe(q, two, "Q").passed());
}
