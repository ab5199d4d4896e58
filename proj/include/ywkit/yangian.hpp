#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "rmatrix.hpp"
#include "superpoly.hpp"

namespace ywkit {

// Structure constants {T_m^{ij}, T_n^{kl}} for 1 <= m, n <= cap, exact modulo
// monomials containing a mode above `cap`. Missing pairs bracket to zero.
struct BracketTable {
  Signature sig;
  int cap = 0;
  std::map<std::pair<Gen, Gen>, SuperPoly> entries;

  SuperPoly get(const Gen& a, const Gen& b) const {
    auto it = entries.find({a, b});
    return it == entries.end() ? SuperPoly{} : it->second;
  }
};

inline std::vector<Gen> mode_generators(const Signature& sig, int min_level, int max_level) {
  std::vector<Gen> out;
  for (int n = min_level; n <= max_level; ++n)
    for (int i = 0; i < sig.total(); ++i)
      for (int j = 0; j < sig.total(); ++j) out.push_back(make_gen(sig, n, i, j));
  return out;
}

// Mode T_n^{ij} as a ring element; level 0 is the constant delta^{ij}.
inline SuperPoly mode(const Signature& sig, int n, int i, int j) {
  if (n == 0) return SuperPoly(i == j ? 1 : 0);
  return SuperPoly::generator(make_gen(sig, n, i, j));
}

// Derives the mode brackets from {L1(u), L2(v)} = [P/(u-v), L1(u) L2(v)].
// With Lh(u) = u^cap L(u) truncated at level cap, the numerator
// [P, Lh1(u) Lh2(v)] is divided exactly by (u - v) and the coefficient of
// u^{cap-m} v^{cap-n} in entry ((i,k),(j,l)) gives
// (-1)^{([i]+[j])[k]} {T_m^{ij}, T_n^{kl}}.
inline BracketTable derive_mode_brackets(const Signature& sig, int cap) {
  if (cap < 1) throw std::invalid_argument("derive_mode_brackets: level cap must be >= 1");
  using Entry = BiPoly<SuperPoly>;
  const int d = sig.total();
  auto par = [&](int i) { return sig.parity(i); };

  RingMatrix<Entry> l1(d * d), l2(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Entry su, sv;
      for (int n = 0; n <= cap; ++n) {
        SuperPoly t = mode(sig, n, i, j);
        su.add(cap - n, 0, t);
        sv.add(0, cap - n, t);
      }
      for (int k = 0; k < d; ++k) {
        const int s = sign_pow((par(i) + par(j)) * par(k));
        l1.set(i * d + k, j * d + k, s < 0 ? Entry(su * Scalar(-1)) : su);
        l2.set(k * d + i, k * d + j, sv);
      }
    }
  RingMatrix<Scalar> p = build_permutation(sig);
  auto x = l1 * l2;
  auto numerator = p * x - x * p;
  const ScalarBiPoly den = var_u() - var_v();

  BracketTable table{sig, cap, {}};
  for (const auto& [ix, poly] : numerator.entries()) {
    Entry q;
    try {
      q = divide_exact(poly, den);
    } catch (const DivisionError& e) {
      throw std::logic_error("bracket numerator not divisible by (u-v) at " + compound_label(ix.first, d, 2) + "x" +
                             compound_label(ix.second, d, 2) + ", " + e.what());
    }
    const int i = ix.first / d, k = ix.first % d;
    const int j = ix.second / d, l = ix.second % d;
    const int s = sign_pow((par(i) + par(j)) * par(k));
    for (const auto& [e, c] : q.terms()) {
      const int m = cap - e.first, n = cap - e.second;
      if (m < 1 || n < 1 || m > cap || n > cap)
        throw std::logic_error("bracket with a constant mode is nonzero at " + term_label(e.first, e.second));
      auto key = std::make_pair(make_gen(sig, m, i, j), make_gen(sig, n, k, l));
      table.entries[key] += s < 0 ? SuperPoly(c * Scalar(-1)) : c;
    }
  }
  for (auto it = table.entries.begin(); it != table.entries.end();) {
    if (it->second.is_zero()) {
      it = table.entries.erase(it);
    } else {
      ++it;
    }
  }
  return table;
}

// Poisson algebra generated by modes T_n^{ij}. In truncated mode (level p)
// modes above p are zero and every bracket is reduced modulo them. In
// untruncated mode the table is exact for results whose modes stay within
// the derivation cap.
class YangianAlgebra {
 public:
  static YangianAlgebra truncated(const Signature& sig, int p, int cap = -1) {
    if (p < 1) throw std::invalid_argument("truncation level must be >= 1");
    YangianAlgebra a;
    a.sig_ = sig;
    a.p_ = p;
    a.truncated_ = true;
    a.table_ = derive_mode_brackets(sig, cap < 0 ? p : std::max(cap, p));
    for (auto it = a.table_.entries.begin(); it != a.table_.entries.end();) {
      if (it->first.first.level > p || it->first.second.level > p) {
        it = a.table_.entries.erase(it);
        continue;
      }
      it->second = truncate_levels(it->second, p);
      it = it->second.is_zero() ? a.table_.entries.erase(it) : std::next(it);
    }
    return a;
  }

  static YangianAlgebra untruncated(const Signature& sig, int cap) {
    YangianAlgebra a;
    a.sig_ = sig;
    a.p_ = cap;
    a.truncated_ = false;
    a.table_ = derive_mode_brackets(sig, cap);
    return a;
  }

  const Signature& sig() const { return sig_; }
  int level() const { return p_; }
  bool is_truncated() const { return truncated_; }
  const BracketTable& table() const { return table_; }
  BracketTable& mutable_table() { return table_; }

  std::vector<Gen> generators(int max_level = -1) const {
    return mode_generators(sig_, 1, max_level < 0 ? p_ : max_level);
  }

  SuperPoly mode(int n, int i, int j) const {
    if (truncated_ && n > p_) return {};
    return ywkit::mode(sig_, n, i, j);
  }

  SuperPoly reduce(const SuperPoly& x) const { return truncated_ ? truncate_levels(x, p_) : x; }

  SuperPoly bracket(const Gen& a, const Gen& b) const {
    if (a.is_parameter() || b.is_parameter()) return {};
    if (truncated_ && (a.level > p_ || b.level > p_)) return {};
    if (a.level > table_.cap || b.level > table_.cap)
      throw std::out_of_range("bracket beyond derivation cap: " + a.name() + ", " + b.name());
    return table_.get(a, b);
  }

  // Bilinear graded-Leibniz extension of the table.
  SuperPoly bracket(const SuperPoly& x, const SuperPoly& y) const {
    SuperPoly out;
    const SuperPoly xr = reduce(x), yr = reduce(y);
    for (const auto& [mx, cx] : xr.terms())
      for (const auto& [my, cy] : yr.terms()) {
        SuperPoly term = bracket_monomials(mx, my);
        if (!term.is_zero()) out += term * (cx * cy);
      }
    return reduce(out);
  }

 private:
  static SuperPoly word(Monomial::const_iterator b, Monomial::const_iterator e) {
    SuperPoly p;
    p.add_word(Monomial(b, e), Scalar(1));
    return p;
  }

  static int parity_of(Monomial::const_iterator b, Monomial::const_iterator e) {
    int s = 0;
    for (; b != e; ++b) s ^= b->parity();
    return s;
  }

  // {g, h1 ... hk} = sum_j (-1)^{|g|(|h1|+...+|h_{j-1}|)} h1..h_{j-1} {g,hj} h_{j+1}..hk
  SuperPoly bracket_gen_monomial(const Gen& g, const Monomial& m) const {
    SuperPoly out;
    int before = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      SuperPoly b = bracket(g, m[j]);
      if (!b.is_zero()) {
        SuperPoly term = word(m.begin(), m.begin() + j) * b * word(m.begin() + j + 1, m.end());
        out += sign_pow(g.parity() * before) < 0 ? term * Scalar(-1) : term;
      }
      before ^= m[j].parity();
    }
    return out;
  }

  // {g1 ... ga, B} = sum_i (-1)^{(|g_{i+1}|+...+|g_a|)|B|} g1..g_{i-1} {g_i, B} g_{i+1}..g_a
  SuperPoly bracket_monomials(const Monomial& a, const Monomial& b) const {
    SuperPoly out;
    const int pb = monomial_parity(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      SuperPoly inner = bracket_gen_monomial(a[i], b);
      if (inner.is_zero()) continue;
      SuperPoly term = word(a.begin(), a.begin() + i) * inner * word(a.begin() + i + 1, a.end());
      const int after = parity_of(a.begin() + i + 1, a.end());
      out += sign_pow(after * pb) < 0 ? term * Scalar(-1) : term;
    }
    return out;
  }

  Signature sig_{1};
  int p_ = 1;
  bool truncated_ = true;
  BracketTable table_;
};

inline SuperPoly poisson_bracket(const SuperPoly& x, const SuperPoly& y, const YangianAlgebra& alg) {
  return alg.bracket(x, y);
}

// gl(N) (or gl(M|N)) structure constants in the matrix-unit basis a = (i, j):
// [e_ij, e_kl] = delta_jk e_il - (-1)^{([i]+[j])([k]+[l])} delta_li e_kj.
struct AdjointData {
  Signature sig;
  int dim() const { return sig.total() * sig.total(); }
  std::pair<int, int> unit(int a) const { return {a / sig.total(), a % sig.total()}; }
  int index(int i, int j) const { return i * sig.total() + j; }

  // f^{ab}_c as a sparse map c -> coefficient.
  std::map<int, Scalar> structure(int a, int b) const {
    auto [i, j] = unit(a);
    auto [k, l] = unit(b);
    std::map<int, Scalar> out;
    if (j == k) out[index(i, l)] += 1;
    if (l == i) {
      const int s = sign_pow((sig.parity(i) + sig.parity(j)) * (sig.parity(k) + sig.parity(l)));
      out[index(k, j)] -= s;
    }
    for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
  }

  // Trace form tr(e_ij e_kl) = delta_jk delta_il (supertrace in the graded case).
  Scalar form(int a, int b) const {
    auto [i, j] = unit(a);
    auto [k, l] = unit(b);
    if (j != k || i != l) return 0;
    return sign_pow(sig.parity(i));
  }
};

}  // namespace ywkit
