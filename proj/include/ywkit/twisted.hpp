#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "matrix.hpp"
#include "parallel.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "rmatrix.hpp"
#include "yangian.hpp"

namespace ywkit {

// tmodes: tau(T(u)) = T^t(-u), sign (-1)^n on level n.
// wliteral: the same index map with (-1)^{n+1}, the sign written for the
// W-generators; kept to record how it behaves on T-modes.
enum class TauConvention { tmodes, wliteral };

inline const char* tau_convention_name(TauConvention c) { return c == TauConvention::tmodes ? "tmodes" : "wliteral"; }

struct TwistDatum {
  ThetaVector theta;
  int p = 1;
  TauConvention convention = TauConvention::tmodes;

  const Signature& sig() const { return theta.sig; }

  int level_sign(int n) const { return sign_pow(convention == TauConvention::tmodes ? n : n + 1); }

  // tau(T_n^{ij}) = level_sign(n) twist_sign(i, j) T_n^{bar j, bar i}
  SuperPoly image(const Gen& g) const {
    if (g.is_parameter()) return SuperPoly::generator(g);
    const int r = bar_index(sig(), g.col), c = bar_index(sig(), g.row);
    return SuperPoly::generator(make_gen(sig(), g.level, r, c)) *
           Scalar(level_sign(g.level) * twist_sign(theta, g.row, g.col));
  }

  SuperPoly apply(const SuperPoly& x) const {
    return substitute(x, [&](const Gen& g) { return image(g); });
  }

  // Entry (i, j) of the theta-transpose of a matrix with entries m(k, l).
  template <class F>
  auto transpose_entry(const F& m, int i, int j) const {
    using R = std::decay_t<decltype(m(0, 0))>;
    return R(m(bar_index(sig(), j), bar_index(sig(), i)) * Scalar(twist_sign(theta, i, j)));
  }
};

inline TwistDatum build_tau(const ThetaVector& theta, int p, TauConvention convention = TauConvention::tmodes) {
  if (p < 1) throw std::invalid_argument("truncation level must be >= 1");
  return TwistDatum{theta, p, convention};
}

inline std::string twist_label(const TwistDatum& t) {
  return t.sig().to_string() + ",p=" + std::to_string(t.p) + ",theta=" + twist_name(t.theta.cls);
}

// tau^2 = id on every generator up to level p, and {tau x, tau y} = tau {x, y}
// over all generator pairs.
inline Report verify_tau(const TwistDatum& t, const YangianAlgebra& alg, int jobs = 1) {
  Report rep{"twist", {}};
  const std::string label = twist_label(t) + "," + tau_convention_name(t.convention);
  auto gens = alg.generators(t.p);

  std::string bad_gen;
  for (const auto& g : gens) {
    auto once = t.image(g);
    if (!(t.apply(once) == SuperPoly::generator(g))) {
      bad_gen = g.name();
      break;
    }
  }
  rep.add("tau-involution[" + label + "]", bad_gen.empty(), bad_gen.empty() ? "" : "tau^2 differs from identity",
          bad_gen.empty() ? std::map<std::string, std::string>{} : std::map<std::string, std::string>{{"generator", bad_gen}});

  std::vector<std::string> bad(gens.size());
  parallel_for(gens.size(), jobs, [&](std::size_t a) {
    for (const auto& h : gens) {
      auto lhs = alg.bracket(t.image(gens[a]), t.image(h));
      auto rhs = alg.reduce(t.apply(alg.bracket(gens[a], h)));
      if (!(lhs == rhs)) {
        bad[a] = gens[a].name() + "," + h.name();
        return;
      }
    }
  });
  std::string first;
  for (const auto& b : bad)
    if (!b.empty()) {
      first = b;
      break;
    }
  rep.add("tau-automorphism[" + label + "]", first.empty(), first.empty() ? "" : "bracket not preserved",
          first.empty() ? std::map<std::string, std::string>{} : std::map<std::string, std::string>{{"pair", first}});
  return rep;
}

// Modes of S(u) = T(u) tau(T(u)); levels 0..2p, S_0 = identity.
struct SGenerators {
  Signature sig;
  int p = 1;
  std::vector<std::vector<SuperPoly>> modes;  // modes[n][i * d + j]

  int max_level() const { return 2 * p; }
  const SuperPoly& at(int n, int i, int j) const { return modes[n][i * sig.total() + j]; }
};

inline SGenerators build_s(const YangianAlgebra& alg, const TwistDatum& t) {
  const Signature& sig = t.sig();
  const int d = sig.total(), p = t.p;
  SGenerators s{sig, p, std::vector<std::vector<SuperPoly>>(2 * p + 1, std::vector<SuperPoly>(d * d))};
  auto tmode = [&](int n, int i, int j) { return alg.mode(n, i, j); };
  for (int a = 0; a <= p; ++a)
    for (int b = 0; b <= p; ++b)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) {
            SuperPoly left = tmode(a, i, k);
            if (left.is_zero()) continue;
            SuperPoly right = t.apply(tmode(b, k, j));
            if (!right.is_zero()) s.modes[a + b][i * d + j] += left * right;
          }
  for (auto& level : s.modes)
    for (auto& x : level) x = alg.reduce(x);
  return s;
}

namespace detail {

using SEntry = BiPoly<SuperPoly>;

// Sh(u) = u^{2p} S(u) placed in slot 1 (in u) or slot 2 (in v).
inline RingMatrix<SEntry> s_slot(const SGenerators& s, int slot) {
  const int d = s.sig.total(), cap = s.max_level();
  RingMatrix<SEntry> out(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      SEntry e;
      for (int n = 0; n <= cap; ++n) {
        if (s.at(n, i, j).is_zero()) continue;
        if (slot == 1) {
          e.add(cap - n, 0, s.at(n, i, j));
        } else {
          e.add(0, cap - n, s.at(n, i, j));
        }
      }
      if (e.is_zero()) continue;
      for (int k = 0; k < d; ++k) {
        if (slot == 1) {
          out.set(i * d + k, j * d + k, e);
        } else {
          out.set(k * d + i, k * d + j, e);
        }
      }
    }
  return out;
}

}  // namespace detail

// Checks {S1(u), S2(v)} = [P/(u-v), S1 S2] + sign * (S2 Q S1 - S1 Q S2)/(u+v)
// mode by mode, with sign = +1 for the displayed form. Both quotients must be
// exact polynomials.
inline Report verify_twisted_bracket(const YangianAlgebra& alg, const TwistDatum& t, const SGenerators& s, int sign = 1,
                                     int jobs = 1) {
  if (!t.sig().is_plain()) throw std::invalid_argument("twisted bracket check is defined for plain signatures");
  Report rep{"twist", {}};
  const std::string name = "twisted-bracket[" + twist_label(t) + (sign > 0 ? "" : ",r'-sign=-1") + "]";
  const int d = t.sig().total(), cap = s.max_level();
  using detail::SEntry;

  auto s1 = detail::s_slot(s, 1), s2 = detail::s_slot(s, 2);
  auto p = build_permutation(t.sig());
  auto q = build_q_tensor(t.theta);
  auto x = s1 * s2;
  auto num_a = p * x - x * p;
  auto num_b = s2 * q * s1 - s1 * q * s2;

  std::map<std::pair<int, int>, SEntry> rhs;
  for (const auto& [ix, poly] : num_a.entries()) {
    try {
      rhs[ix] += divide_exact(poly, var_u() - var_v());
    } catch (const DivisionError&) {
      rep.add(name, false, "commutator term not divisible by (u-v)",
              {{"entry", compound_label(ix.first, d, 2) + "x" + compound_label(ix.second, d, 2)}});
      return rep;
    }
  }
  for (const auto& [ix, poly] : num_b.entries()) {
    try {
      rhs[ix] += divide_exact(poly, var_u() + var_v()) * Scalar(sign);
    } catch (const DivisionError&) {
      rep.add(name, false, "(u+v) terms do not combine into a polynomial",
              {{"entry", compound_label(ix.first, d, 2) + "x" + compound_label(ix.second, d, 2)}});
      return rep;
    }
  }

  // Left side, entry ((i,k),(j,l)) = sum {S_m^{ij}, S_n^{kl}} u^{cap-m} v^{cap-n}.
  std::vector<std::pair<int, int>> rows;
  for (int a = 0; a < d * d; ++a)
    for (int b = 0; b < d * d; ++b) rows.push_back({a, b});
  std::vector<std::string> bad(rows.size());
  parallel_for(rows.size(), jobs, [&](std::size_t r) {
    auto [row, col] = rows[r];
    const int i = row / d, k = row % d, j = col / d, l = col % d;
    SEntry lhs;
    for (int m = 1; m <= cap; ++m) {
      if (s.at(m, i, j).is_zero()) continue;
      for (int n = 1; n <= cap; ++n) {
        if (s.at(n, k, l).is_zero()) continue;
        lhs.add(cap - m, cap - n, alg.bracket(s.at(m, i, j), s.at(n, k, l)));
      }
    }
    auto it = rhs.find({row, col});
    SEntry right = it == rhs.end() ? SEntry{} : it->second;
    const SEntry raw = lhs - right;
    SEntry diff;
    for (const auto& [e, c] : raw.terms()) diff.add(e.first, e.second, alg.reduce(c));
    if (!diff.is_zero()) {
      auto e = diff.terms().begin()->first;
      bad[r] = "S" + std::to_string(cap - e.first) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "],S" +
               std::to_string(cap - e.second) + "[" + std::to_string(k + 1) + "," + std::to_string(l + 1) + "]";
    }
  });
  for (const auto& b : bad)
    if (!b.empty()) {
      rep.add(name, false, "bracket mismatch", {{"modes", b}});
      return rep;
    }
  rep.add(name, true);
  return rep;
}

// Linear image of level-one modes in gl(N): T_1^{ij} -> e_ij.
inline std::optional<QMatrix> level_one_matrix(const SuperPoly& x, int d) {
  QMatrix m(d, d);
  for (const auto& [mono, c] : x.terms()) {
    if (mono.size() != 1 || mono[0].level != 1) return std::nullopt;
    m(mono[0].row, mono[0].col) += c;
  }
  return m;
}

struct LieClosure {
  int dimension = 0;
  bool closed = false;       // brackets map to commutators
  bool preserves_form = false;  // images satisfy X^t = -X for the theta-transpose
  std::string expected;      // so(N) or sp(N)
  int expected_dimension = 0;
  std::string failure;
};

// Level-one elements of a plain algebra: checks the bracket is the matrix
// commutator (up to the global sign fixed by the T_1 bracket) and that the
// images lie in the so/sp algebra of the theta form.
inline LieClosure level_one_closure(const YangianAlgebra& alg, const TwistDatum& t, const std::vector<SuperPoly>& elems) {
  const int n = t.sig().total();
  LieClosure out;
  const bool symplectic = t.theta.cls == TwistClass::minus;
  out.expected = std::string(symplectic ? "sp(" : "so(") + std::to_string(n) + ")";
  out.expected_dimension = symplectic ? n * (n + 1) / 2 : n * (n - 1) / 2;

  // Global sign between {T_1^{ij}, T_1^{ji}} and [e_ij, e_ji].
  int sigma = 1;
  if (n >= 2) {
    auto b = level_one_matrix(alg.bracket(alg.mode(1, 0, 1), alg.mode(1, 1, 0)), n);
    QMatrix c = QMatrix::unit(n, 0, 0) - QMatrix::unit(n, 1, 1);
    sigma = (b && *b == c) ? 1 : -1;
  }

  std::vector<QMatrix> images;
  std::vector<std::vector<Scalar>> rows;
  out.preserves_form = true;
  for (const auto& e : elems) {
    auto m = level_one_matrix(e, n);
    if (!m) {
      out.failure = "element is not a level-one linear form";
      return out;
    }
    QMatrix tr(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) tr(i, j) = t.transpose_entry([&](int a, int b) { return (*m)(a, b); }, i, j);
    if (!(tr + *m).is_zero()) out.preserves_form = false;
    images.push_back(*m);
    std::vector<Scalar> row;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) row.push_back((*m)(i, j));
    rows.push_back(row);
  }
  out.dimension = rank(rows, n * n);
  out.closed = true;
  for (std::size_t a = 0; a < elems.size() && out.closed; ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      auto br = level_one_matrix(alg.bracket(elems[a], elems[b]), n);
      QMatrix comm = images[a] * images[b] - images[b] * images[a];
      if (!br || !(*br == comm * Scalar(sigma))) {
        out.closed = false;
        out.failure = "bracket of level-one elements is not the commutator";
        break;
      }
    }
  return out;
}

inline Report level_one_report(const std::string& name, const LieClosure& c) {
  Report rep{"twist", {}};
  const bool ok = c.closed && c.preserves_form && c.dimension == c.expected_dimension;
  rep.add(name, ok, ok ? "" : (c.failure.empty() ? "dimension or form mismatch" : c.failure),
          {{"dimension", std::to_string(c.dimension)},
           {"expected", c.expected},
           {"expected_dimension", std::to_string(c.expected_dimension)},
           {"preserves_form", c.preserves_form ? "true" : "false"}});
  return rep;
}

inline Report verify_s_closure(const YangianAlgebra& alg, const TwistDatum& t, const SGenerators& s) {
  const int d = t.sig().total();
  std::vector<SuperPoly> level;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!s.at(1, i, j).is_zero()) level.push_back(s.at(1, i, j));
  return level_one_report("s-closure[" + twist_label(t) + "]", level_one_closure(alg, t, level));
}

// Classical symmetry tau(S(u)) = S(-u) + c (S(u) - S(-u)) / (2u), with tau
// acting on S as the theta-transpose. c = 1 is the displayed relation, c = 0
// its leading part.
inline Report verify_s_symmetry_classical(const SGenerators& s, const TwistDatum& t, int c = 1) {
  Report rep{"super", {}};
  const int d = t.sig().total();
  const std::string name =
      std::string(c ? "s-symmetry-classical[" : "s-symmetry-classical-leading[") + twist_label(t) + "]";
  for (int n = 1; n <= s.max_level(); ++n)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        SuperPoly lhs = t.transpose_entry([&](int a, int b) { return s.at(n, a, b); }, i, j);
        SuperPoly rhs = s.at(n, i, j) * Scalar(sign_pow(n));
        if (c && (n - 1) % 2 == 1) rhs += s.at(n - 1, i, j) * Scalar(c);
        if (!(lhs == rhs)) {
          rep.add(name, false, "symmetry relation fails",
                  {{"mode", "S" + std::to_string(n) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]"},
                   {"difference", (lhs - rhs).to_string()}});
          return rep;
        }
      }
  rep.add(name, true);
  return rep;
}

// Quotient by the ideal generated by g - tau(g), with the symmetrized
// combinations (g + tau g)/2 as representatives.
struct FoldedAlgebra {
  TwistDatum tau;
  std::vector<std::vector<SuperPoly>> representatives;  // per level 1..p, index level-1
  std::vector<int> counts;

  SuperPoly project(const SuperPoly& x) const {
    return substitute(x, [&](const Gen& g) {
      return (SuperPoly::generator(g) + tau.image(g)) * rational(1, 2);
    });
  }
};

inline void validate_fold(const TwistDatum& t) {
  if (!t.sig().is_plain()) throw TwistError("folding is defined for plain signatures");
  const int n = t.sig().total();
  if (t.theta.cls == TwistClass::plus && n % 2 == 1 && t.p % 2 == 0)
    throw TwistError("orthogonal fold with odd N requires odd p, got N=" + std::to_string(n) +
                     ", p=" + std::to_string(t.p));
}

inline FoldedAlgebra fold_quotient(const YangianAlgebra& alg, const TwistDatum& t) {
  validate_fold(t);
  FoldedAlgebra f{t, {}, {}};
  const int d = t.sig().total();
  for (int n = 1; n <= t.p; ++n) {
    std::vector<SuperPoly> reps;
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        SuperPoly g = alg.mode(n, i, j);
        SuperPoly r = (g + t.apply(g)) * rational(1, 2);
        if (r.is_zero()) continue;
        std::vector<Scalar> row(d * d);
        for (const auto& [m, c] : r.terms()) row[m[0].row * d + m[0].col] = c;
        rows.push_back(row);
        if (rank(rows, d * d) == static_cast<int>(reps.size()) + 1) {
          reps.push_back(r);
        } else {
          rows.pop_back();
        }
      }
    f.counts.push_back(static_cast<int>(reps.size()));
    f.representatives.push_back(std::move(reps));
  }
  return f;
}

// Brackets of representatives are tau-invariant and, reduced modulo the
// ideal, are polynomials in the representatives; counts equal the +1
// eigenspace dimension of tau per level; level one matches so/sp.
inline Report verify_fold(const YangianAlgebra& alg, const FoldedAlgebra& f, int jobs = 1) {
  Report rep{"fold", {}};
  const auto& t = f.tau;
  const std::string label = twist_label(t);
  const int d = t.sig().total();

  bool counts_ok = true;
  std::string counts;
  for (int n = 1; n <= t.p; ++n) {
    // +1 eigenspace of tau on level n: rank of (tau + 1).
    std::vector<std::vector<Scalar>> rows;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        std::vector<Scalar> row(d * d);
        row[i * d + j] += 1;
        const SuperPoly img = t.image(make_gen(t.sig(), n, i, j));
        for (const auto& [m, c] : img.terms()) row[m[0].row * d + m[0].col] += c;
        rows.push_back(row);
      }
    const int expect = rank(rows, d * d);
    counts_ok = counts_ok && expect == f.counts[n - 1];
    counts += (counts.empty() ? "" : ",") + std::to_string(f.counts[n - 1]);
  }
  rep.add("fold-counts[" + label + "]", counts_ok, counts_ok ? "" : "representative count differs from eigenspace dimension",
          {{"counts", counts}});

  std::vector<SuperPoly> all;
  for (const auto& level : f.representatives) all.insert(all.end(), level.begin(), level.end());
  std::vector<std::string> bad(all.size());
  parallel_for(all.size(), jobs, [&](std::size_t a) {
    for (std::size_t b = 0; b < all.size(); ++b) {
      auto c = alg.bracket(all[a], all[b]);
      auto reduced = alg.reduce(f.project(c));
      if (!(alg.reduce(t.apply(c)) == c) || !(alg.reduce(t.apply(reduced)) == reduced) ||
          !alg.reduce(f.project(c - reduced)).is_zero()) {
        bad[a] = all[a].to_string() + " | " + all[b].to_string();
        return;
      }
    }
  });
  std::string first;
  for (const auto& b : bad)
    if (!b.empty()) {
      first = b;
      break;
    }
  rep.add("fold-descends[" + label + "]", first.empty(), first.empty() ? "" : "bracket does not descend",
          first.empty() ? std::map<std::string, std::string>{} : std::map<std::string, std::string>{{"pair", first}});

  auto closure = level_one_closure(alg, t, f.representatives.front());
  auto lr = level_one_report("fold-level-one[" + label + "]", closure);
  rep.merge(lr);
  return rep;
}

}  // namespace ywkit
