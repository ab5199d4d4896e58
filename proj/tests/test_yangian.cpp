#include <gtest/gtest.h>

#include <random>

#include "ywkit/yangian.hpp"

using namespace ywkit;

namespace {

// Closed-form classical Yangian bracket, written independently of the
// generating-function derivation:
// {T_m^{ab}, T_n^{cd}} = s * sum_{r=1}^{min(m,n)} (T_{r-1}^{cb} T_{m+n-r}^{ad} - T_{m+n-r}^{cb} T_{r-1}^{ad})
// with s = (-1)^{[a][b]+[a][c]+[b][c]}, modes above `cap` dropped.
SuperPoly closed_form(const Signature& sig, int m, int a, int b, int n, int c, int d, int cap) {
  auto t = [&](int level, int i, int j) -> SuperPoly {
    if (level > cap) return {};
    return mode(sig, level, i, j);
  };
  SuperPoly out;
  for (int r = 1; r <= std::min(m, n); ++r)
    out += t(r - 1, c, b) * t(m + n - r, a, d) - t(m + n - r, c, b) * t(r - 1, a, d);
  const int pa = sig.parity(a), pb = sig.parity(b), pc = sig.parity(c);
  return out * Scalar(sign_pow(pa * pb + pa * pc + pb * pc));
}

void expect_table_matches_closed_form(const Signature& sig, int cap) {
  auto table = derive_mode_brackets(sig, cap);
  for (const auto& g : mode_generators(sig, 1, cap))
    for (const auto& h : mode_generators(sig, 1, cap)) {
      auto oracle = closed_form(sig, g.level, g.row, g.col, h.level, h.row, h.col, cap);
      ASSERT_EQ(table.get(g, h), oracle) << sig.to_string() << " {" << g.name() << "," << h.name() << "}";
    }
}

}  // namespace

TEST(DeriveBrackets, MatchesClosedFormPlain) {
  expect_table_matches_closed_form(Signature(1), 3);
  expect_table_matches_closed_form(Signature(2), 3);
  expect_table_matches_closed_form(Signature(3), 2);
}

TEST(DeriveBrackets, MatchesClosedFormSuper) {
  expect_table_matches_closed_form(Signature(1, 1), 2);
  expect_table_matches_closed_form(Signature(2, 1), 2);
  expect_table_matches_closed_form(Signature(1, 2), 1);
}

TEST(DeriveBrackets, LevelOneGlTwo) {
  Signature sig(2);
  auto table = derive_mode_brackets(sig, 1);
  EXPECT_EQ(table.get(make_gen(sig, 1, 0, 1), make_gen(sig, 1, 1, 0)), mode(sig, 1, 0, 0) - mode(sig, 1, 1, 1));
}

TEST(DeriveBrackets, LevelBound) {
  Signature sig(2);
  auto table = derive_mode_brackets(sig, 4);
  for (const auto& [key, value] : table.entries)
    for (const auto& [m, c] : value.terms())
      for (const auto& g : m) ASSERT_LE(g.level, key.first.level + key.second.level - 1);
  auto alg = YangianAlgebra::untruncated(sig, 4);
  // {x, constant} = 0
  EXPECT_TRUE(alg.bracket(mode(sig, 2, 0, 1), SuperPoly(Scalar(7))).is_zero());
}

TEST(PoissonBracket, TruncatedLevelOne) {
  Signature sig(2);
  auto alg = YangianAlgebra::truncated(sig, 1);
  EXPECT_EQ(alg.bracket(alg.mode(1, 0, 1), alg.mode(1, 1, 0)), alg.mode(1, 0, 0) - alg.mode(1, 1, 1));
  EXPECT_TRUE(alg.mode(2, 0, 0).is_zero());
}

TEST(PoissonBracket, LeibnizOnRandomTriples) {
  std::mt19937_64 rng(3);
  for (auto sig : {Signature(2), Signature(1, 1)}) {
    auto alg = YangianAlgebra::truncated(sig, 2);
    auto gens = alg.generators();
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int t = 0; t < 200; ++t) {
      Gen gx = gens[pick(rng)], gy = gens[pick(rng)], gz = gens[pick(rng)];
      auto x = SuperPoly::generator(gx) * SuperPoly::generator(gens[pick(rng)]);
      auto y = SuperPoly::generator(gy);
      auto z = SuperPoly::generator(gz) + SuperPoly(Scalar(2));
      const int px = *x.parity(), py = *y.parity();
      auto lhs = alg.bracket(x, y * z);
      auto rhs = alg.bracket(x, y) * z + y * alg.bracket(x, z) * Scalar(sign_pow(px * py));
      ASSERT_EQ(lhs, alg.reduce(rhs));
    }
  }
}
