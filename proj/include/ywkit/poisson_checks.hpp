#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "yangian.hpp"

namespace ywkit {

inline std::string algebra_label(const YangianAlgebra& alg) {
  return "sig=" + alg.sig().to_string() + (alg.is_truncated() ? ",p=" : ",cap=") + std::to_string(alg.level());
}

// {x,y} = -(-1)^{|x||y|} {y,x} over all generator pairs of the algebra.
inline Report verify_antisymmetry(const YangianAlgebra& alg) {
  Report rep{"antisymmetry", {}};
  const auto gens = alg.generators();
  std::size_t pairs = 0;
  for (const auto& a : gens)
    for (const auto& b : gens) {
      ++pairs;
      auto lhs = alg.bracket(a, b);
      auto rhs = alg.bracket(b, a) * Scalar(-sign_pow(a.parity() * b.parity()));
      if (lhs != rhs) {
        rep.add("antisymmetry[" + algebra_label(alg) + "]", false, "graded antisymmetry violated",
                {{"pair", a.name() + "," + b.name()}, {"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}});
        return rep;
      }
    }
  rep.add("antisymmetry[" + algebra_label(alg) + "]", true, {}, {{"pairs", std::to_string(pairs)}});
  return rep;
}

// Graded cyclic Jacobi sum
// (-1)^{|a||c|}{a,{b,c}} + (-1)^{|b||a|}{b,{c,a}} + (-1)^{|c||b|}{c,{a,b}}.
inline SuperPoly jacobi_sum(const YangianAlgebra& alg, const Gen& a, const Gen& b, const Gen& c) {
  auto ga = SuperPoly::generator(a), gb = SuperPoly::generator(b), gc = SuperPoly::generator(c);
  auto t1 = alg.bracket(ga, alg.bracket(b, c)) * Scalar(sign_pow(a.parity() * c.parity()));
  auto t2 = alg.bracket(gb, alg.bracket(c, a)) * Scalar(sign_pow(b.parity() * a.parity()));
  auto t3 = alg.bracket(gc, alg.bracket(a, b)) * Scalar(sign_pow(c.parity() * b.parity()));
  return t1 + t2 + t3;
}

// Exhaustive Jacobi over all ordered generator triples of level <= bound.
inline Report verify_jacobi(const YangianAlgebra& alg, int bound, int jobs = 1) {
  Report rep{"jacobi", {}};
  if (!alg.is_truncated() && alg.table().cap < 3 * bound - 2)
    throw std::invalid_argument("untruncated Jacobi needs a derivation cap of at least 3*bound-2");
  const auto gens = alg.generators(bound);
  std::vector<std::optional<std::map<std::string, std::string>>> bad(gens.size());
  parallel_for(gens.size(), jobs, [&](std::size_t i) {
    for (const auto& b : gens)
      for (const auto& c : gens) {
        auto s = jacobi_sum(alg, gens[i], b, c);
        if (!s.is_zero()) {
          bad[i] = std::map<std::string, std::string>{
              {"triple", gens[i].name() + "," + b.name() + "," + c.name()}, {"residual", s.to_string()}};
          return;
        }
      }
  });
  const std::string name = "jacobi[" + algebra_label(alg) + (alg.is_truncated() ? "" : ",bound=" + std::to_string(bound)) + "]";
  for (const auto& b : bad)
    if (b) {
      rep.add(name, false, "Jacobi identity violated", *b);
      return rep;
    }
  const std::size_t n = gens.size();
  rep.add(name, true, {}, {{"triples", std::to_string(n * n * n)}});
  return rep;
}

inline int ideal_cap(int p) { return std::max(2 * p - 1, p + 1); }

// J_p, generated by the modes of level > p, is a Poisson ideal: for every
// generator g and ideal generator h (levels up to max(2p-1, p+1)), every
// monomial of {g, h} contains a mode above p.
inline Report verify_truncation_ideal(const Signature& sig, int p, int jobs = 1) {
  Report rep{"truncation-ideal", {}};
  const int cap = ideal_cap(p);
  auto alg = YangianAlgebra::untruncated(sig, cap);
  const auto gens = alg.generators(cap);
  const auto ideal = mode_generators(sig, p + 1, cap);
  std::vector<std::optional<std::map<std::string, std::string>>> bad(gens.size());
  parallel_for(gens.size(), jobs, [&](std::size_t i) {
    for (const auto& h : ideal) {
      auto b = alg.bracket(gens[i], h);
      auto escaped = truncate_levels(b, p);
      if (!escaped.is_zero()) {
        bad[i] = std::map<std::string, std::string>{{"pair", gens[i].name() + "," + h.name()},
                                                    {"escaping_part", escaped.to_string()}};
        return;
      }
    }
  });
  const std::string name = "truncation-ideal[sig=" + sig.to_string() + ",p=" + std::to_string(p) + "]";
  for (const auto& b : bad)
    if (b) {
      rep.add(name, false, "bracket escapes the truncation ideal", *b);
      return rep;
    }
  rep.add(name, true, {},
          {{"pairs", std::to_string(gens.size() * ideal.size())}, {"level_cap", std::to_string(cap)}});
  return rep;
}

struct CenterData {
  int n = 0;
  int p = 0;
  std::vector<SuperPoly> coeffs;  // c_1 .. c_{Np}
};

// det L(u) = 1 + sum_n c_n u^{-n}, L(u) = 1 + sum_{m<=p} T_m u^{-m}, plain signature.
inline CenterData classical_det(const YangianAlgebra& alg) {
  const Signature& sig = alg.sig();
  if (!sig.is_plain()) throw std::invalid_argument("classical_det needs a plain signature");
  if (!alg.is_truncated()) throw std::invalid_argument("classical_det needs a truncated algebra");
  const int n = sig.total(), p = alg.level();
  using Series = std::vector<SuperPoly>;  // coefficients of u^{-k}
  auto entry = [&](int i, int j) {
    Series s(p + 1);
    s[0] = SuperPoly(i == j ? 1 : 0);
    for (int m = 1; m <= p; ++m) s[m] = alg.mode(m, i, j);
    return s;
  };
  auto mul = [](const Series& a, const Series& b) {
    Series out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero())
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Series det(n * p + 1);
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    Series term{SuperPoly(1)};
    for (int i = 0; i < n; ++i) term = mul(term, entry(i, perm[i]));
    for (std::size_t k = 0; k < term.size(); ++k) det[k] += term[k] * Scalar(sign_pow(inversions));
  } while (std::next_permutation(perm.begin(), perm.end()));
  CenterData out{n, p, {}};
  for (int k = 1; k <= n * p; ++k) out.coeffs.push_back(det[k]);
  return out;
}

// Deterministic rational evaluation point for Jacobian rank tests.
inline std::map<Gen, Scalar> sample_point(const std::vector<Gen>& gens, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  std::map<Gen, Scalar> pt;
  for (const auto& g : gens) pt[g] = rational(num(rng), den(rng));
  return pt;
}

inline int jacobian_rank(const std::vector<SuperPoly>& fs, const std::vector<Gen>& gens, unsigned seed = 17) {
  auto pt = sample_point(gens, seed);
  std::vector<std::vector<Scalar>> rows;
  for (const auto& f : fs) {
    std::vector<Scalar> row;
    for (const auto& g : gens) row.push_back(evaluate(derivative(f, g), [&](const Gen& h) { return pt.at(h); }));
    rows.push_back(std::move(row));
  }
  return rank(rows, static_cast<int>(gens.size()));
}

inline Report verify_center(const YangianAlgebra& alg, const CenterData& center) {
  Report rep{"center", {}};
  const std::string label = "[N=" + std::to_string(center.n) + ",p=" + std::to_string(center.p) + "]";
  const int expected = center.n * center.p;
  rep.add("center-count" + label, static_cast<int>(center.coeffs.size()) == expected,
          "det L(u) coefficient count must equal Np",
          {{"count", std::to_string(center.coeffs.size())}, {"expected", std::to_string(expected)}});

  const auto gens = alg.generators();
  std::optional<std::map<std::string, std::string>> bad;
  for (std::size_t k = 0; k < center.coeffs.size() && !bad; ++k) {
    if (center.coeffs[k].is_zero()) {
      bad = std::map<std::string, std::string>{{"coefficient", "c" + std::to_string(k + 1)}, {"value", "0"}};
      break;
    }
    for (const auto& g : gens) {
      auto b = alg.bracket(center.coeffs[k], SuperPoly::generator(g));
      if (!b.is_zero()) {
        bad = std::map<std::string, std::string>{{"coefficient", "c" + std::to_string(k + 1)},
                                                 {"generator", g.name()},
                                                 {"bracket", b.to_string()}};
        break;
      }
    }
  }
  rep.add("center-central" + label, !bad, bad ? "coefficient is not Poisson-central" : "",
          bad.value_or(std::map<std::string, std::string>{}));

  std::set<Monomial> leads;
  for (const auto& c : center.coeffs)
    if (!c.is_zero()) leads.insert(leading_monomial(c));
  const int jrank = jacobian_rank(center.coeffs, gens);
  const bool independent = static_cast<int>(leads.size()) == expected && jrank == expected;
  rep.add("center-independent" + label, independent, independent ? "" : "coefficients are algebraically dependent",
          {{"distinct_leading_monomials", std::to_string(leads.size())}, {"jacobian_rank", std::to_string(jrank)}});
  return rep;
}

// {T_1^a, T_n^b} = f^{ab}_c T_n^c for every level n <= p (plain signature).
inline Report verify_adjoint_presentation(const YangianAlgebra& alg) {
  Report rep{"adjoint", {}};
  const Signature& sig = alg.sig();
  if (!sig.is_plain()) throw std::invalid_argument("adjoint presentation check needs a plain signature");
  AdjointData adj{sig};
  for (int n = 1; n <= alg.level(); ++n) {
    std::optional<std::map<std::string, std::string>> bad;
    for (int a = 0; a < adj.dim() && !bad; ++a)
      for (int b = 0; b < adj.dim(); ++b) {
        auto [i, j] = adj.unit(a);
        auto [k, l] = adj.unit(b);
        auto lhs = alg.bracket(make_gen(sig, 1, i, j), make_gen(sig, n, k, l));
        SuperPoly rhs;
        for (const auto& [c, f] : adj.structure(a, b)) {
          auto [r, s] = adj.unit(c);
          rhs += alg.mode(n, r, s) * f;
        }
        if (lhs != alg.reduce(rhs)) {
          bad = std::map<std::string, std::string>{{"pair", make_gen(sig, 1, i, j).name() + "," + make_gen(sig, n, k, l).name()},
                                                   {"lhs", lhs.to_string()},
                                                   {"rhs", rhs.to_string()}};
          break;
        }
      }
    rep.add("adjoint[" + algebra_label(alg) + ",n=" + std::to_string(n) + "]", !bad,
            bad ? "level does not carry the adjoint action" : "", bad.value_or(std::map<std::string, std::string>{}));
  }
  return rep;
}

// Level-1 modes close into gl(M|N): finds a sign normalization
// T_1^{ij} = eps_ij e_ij, eps_ij = (-1)^{alpha[i] + beta[j] + gamma[i][j]},
// under which the derived brackets equal the AdjointData structure constants.
inline Report verify_level_one_closure(const YangianAlgebra& alg) {
  Report rep{"level-one", {}};
  const Signature& sig = alg.sig();
  AdjointData adj{sig};
  for (int pattern = 0; pattern < 8; ++pattern) {
    const int alpha = pattern & 1, beta = (pattern >> 1) & 1, gamma = (pattern >> 2) & 1;
    auto eps = [&](int i, int j) {
      return sign_pow(alpha * sig.parity(i) + beta * sig.parity(j) + gamma * sig.parity(i) * sig.parity(j));
    };
    bool ok = true;
    for (int a = 0; a < adj.dim() && ok; ++a)
      for (int b = 0; b < adj.dim() && ok; ++b) {
        auto [i, j] = adj.unit(a);
        auto [k, l] = adj.unit(b);
        // {eps_a T^a, eps_b T^b} = f^{ab}_c eps_c T^c
        auto lhs = alg.bracket(make_gen(sig, 1, i, j), make_gen(sig, 1, k, l)) * Scalar(eps(i, j) * eps(k, l));
        SuperPoly rhs;
        for (const auto& [c, f] : adj.structure(a, b)) {
          auto [r, s] = adj.unit(c);
          rhs += alg.mode(1, r, s) * (f * eps(r, s));
        }
        ok = lhs == rhs;
      }
    if (ok) {
      rep.add("level-one-closure[" + algebra_label(alg) + "]", true, {},
              {{"normalization", "(-1)^(" + std::to_string(alpha) + "[i]+" + std::to_string(beta) + "[j]+" +
                                     std::to_string(gamma) + "[i][j])"},
               {"dimension", std::to_string(adj.dim())}});
      return rep;
    }
  }
  rep.add("level-one-closure[" + algebra_label(alg) + "]", false,
          "no sign normalization maps level-1 brackets onto gl structure constants");
  return rep;
}

}  // namespace ywkit
