#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modules.hpp"
#include "report.hpp"
#include "rmatrix.hpp"
#include "twisted.hpp"

namespace ywkit {

// tau(T)(u) = T^t(-u) on a module: level n block (i, j) is
// (-1)^n twist_sign(i, j) T_n^{bar j, bar i}.
inline std::vector<Blocks> tau_series(const ModuleData& m, const ThetaVector& theta) {
  const int n = m.n();
  std::vector<Blocks> out;
  for (int level = 0; level <= m.p; ++level) {
    Blocks b(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        b[i * n + j] =
            m.t(level, bar_index(m.sig, j), bar_index(m.sig, i)) * Scalar(sign_pow(level) * twist_sign(theta, i, j));
    out.push_back(std::move(b));
  }
  return out;
}

// S(u) = T(u) tau(T(u)) as operators, levels 0..2p.
inline std::vector<Blocks> s_series(const ModuleData& m, const ThetaVector& theta) {
  auto tau = tau_series(m, theta);
  std::vector<Blocks> out(2 * m.p + 1, detail::zero_blocks(m.sig, m.dim));
  for (int a = 0; a <= m.p; ++a)
    for (int b = 0; b <= m.p; ++b) {
      auto prod = block_product(m.sig, m.modes[a], tau[b]);
      for (std::size_t e = 0; e < prod.size(); ++e) out[a + b][e] = out[a + b][e] + prod[e];
    }
  return out;
}

inline std::string twisted_module_label(const ModuleData& m, const ThetaVector& theta) {
  return module_label(m) + ",theta=" + twist_name(theta.cls);
}

// The twisted series still satisfies RTT: tau is an algebra automorphism.
inline Report verify_tau_on_module(const ModuleData& m, const ThetaVector& theta) {
  Report rep{"twist", {}};
  auto bad = rtt_mismatch(m.sig, m.parity, tau_series(m, theta), m.p);
  rep.add("tau-module-rtt[" + twisted_module_label(m, theta) + "]", !bad, bad ? "T^t(-u) violates RTT" : "",
          bad ? std::map<std::string, std::string>{{"mismatch", *bad}} : std::map<std::string, std::string>{});
  return rep;
}

// Which operator sits between S1 and S2 in the reflection equation, as a
// function of u+v. tau(T(u)) = T^t(-u) carries the argument flip into the
// transposed R, so R'(-(u+v)) = I + Q/(u+v) is the matching partner;
// I - Q/(u+v) is the unflipped reading and I - P/(u+v) a negative control.
enum class ReflectionPartner { q_minus, q_plus, p_control };

inline const char* partner_name(ReflectionPartner r) {
  switch (r) {
    case ReflectionPartner::q_minus: return "I-Q/(u+v)";
    case ReflectionPartner::q_plus: return "I+Q/(u+v)";
    case ReflectionPartner::p_control: return "I-P/(u+v)";
  }
  return "?";
}

// Cleared by (u-v)(u+v) u^{2p} v^{2p}. Plain signatures only.
inline std::optional<std::string> rsrs_mismatch(const ModuleData& m, const ThetaVector& theta, ReflectionPartner partner) {
  if (!m.sig.is_plain()) throw std::invalid_argument("the reflection equation is checked for plain signatures only");
  const int dv = m.dim;
  const int dim = m.n() * m.n() * dv;
  auto s = s_series(m, theta);
  const int top = 2 * m.p;
  auto p12 = lift_aux_pair(build_permutation(m.sig), dv);
  auto q12 = lift_aux_pair(build_q_tensor(theta), dv);
  auto r = OpBiPoly::linear(dim, 1, -1, p12 * Scalar(-1));
  OpBiPoly rp(dim);
  switch (partner) {
    case ReflectionPartner::q_minus: rp = OpBiPoly::linear(dim, 1, 1, q12 * Scalar(-1)); break;
    case ReflectionPartner::q_plus: rp = OpBiPoly::linear(dim, 1, 1, q12); break;
    case ReflectionPartner::p_control: rp = OpBiPoly::linear(dim, 1, 1, p12 * Scalar(-1)); break;
  }
  auto s1 = series_in_slot(m.sig, m.parity, s, top, 1, false);
  auto s2 = series_in_slot(m.sig, m.parity, s, top, 2, true);
  auto diff = r * s1 * rp * s2 - s2 * rp * s1 * r;
  if (auto bad = diff.first_nonzero()) return mismatch_label(*bad);
  return std::nullopt;
}

inline Report verify_rsrs(const ModuleData& m, const ThetaVector& theta,
                          ReflectionPartner partner = ReflectionPartner::q_plus) {
  Report rep{"twist", {}};
  auto bad = rsrs_mismatch(m, theta, partner);
  std::string name = "rsrs[" + twisted_module_label(m, theta) + "]";
  if (partner != ReflectionPartner::q_plus) name += "[R'=" + std::string(partner_name(partner)) + "]";
  rep.add(name, !bad, bad ? "reflection equation fails" : "",
          bad ? std::map<std::string, std::string>{{"mismatch", *bad}} : std::map<std::string, std::string>{});
  return rep;
}

// Symmetry relation S^t(u) = S(-u) + c (S(u) - S(-u)) / (2u), read level by
// level: 2 S^t_{n+1} = 2 (-1)^{n+1} S_{n+1} + c (1 - (-1)^n) S_n.
// The transpose acts on the auxiliary indices only.
template <class Entry, class Get>
std::optional<std::string> symmetry_mismatch(const Signature& sig, const ThetaVector& theta, int top, const Get& s,
                                             const Scalar& c) {
  const int n = sig.total();
  for (int level = 0; level <= top; ++level)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Entry lhs = s(level, bar_index(sig, j), bar_index(sig, i)) * Scalar(2 * twist_sign(theta, i, j));
        Entry rhs = s(level, i, j) * Scalar(2 * sign_pow(level));
        if (level > 0 && (level - 1) % 2 == 1) rhs = rhs + s(level - 1, i, j) * Scalar(2 * c);
        if (!(lhs == rhs))
          return "S" + std::to_string(level) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      }
  return std::nullopt;
}

inline Report verify_s_symmetry_module(const ModuleData& m, const ThetaVector& theta, const Scalar& c = 1) {
  Report rep{m.sig.is_plain() ? "twist" : "super", {}};
  auto s = s_series(m, theta);
  const int top = 2 * m.p;
  auto get = [&](int level, int i, int j) -> QMatrix {
    return level <= top ? s[level][i * m.n() + j] : QMatrix(m.dim, m.dim);
  };
  auto bad = symmetry_mismatch<QMatrix>(m.sig, theta, top + 1, get, c);
  std::string name = "s-symmetry-module[" + twisted_module_label(m, theta) + ",c=" + to_string(c) + "]";
  rep.add(name, !bad, bad ? "symmetry relation fails" : "",
          bad ? std::map<std::string, std::string>{{"mode", *bad}} : std::map<std::string, std::string>{});
  return rep;
}

// Enveloping superalgebra U(gl(M|N)) in PBW normal form. Words are sorted
// generator indices a*N + b; an odd generator occurs at most once.
class Enveloping {
 public:
  using Word = std::vector<int>;
  using Element = std::map<Word, Scalar>;

  explicit Enveloping(const Signature& sig) : sig_(sig) {}

  int n() const { return sig_.total(); }
  int index(int a, int b) const { return a * n() + b; }
  int parity(int g) const { return (sig_.parity(g / n()) + sig_.parity(g % n())) & 1; }

  Element generator(int a, int b) const { return {{Word{index(a, b)}, Scalar(1)}}; }
  static Element scalar(const Scalar& s) {
    Element e;
    if (!is_zero(s)) e[{}] = s;
    return e;
  }

  // [e_ab, e_cd} = delta_bc e_ad - (-1)^{|ab||cd|} delta_da e_cb
  Element bracket(int x, int y) const {
    const int a = x / n(), b = x % n(), c = y / n(), d = y % n();
    Element out;
    if (b == c) add(out, {index(a, d)}, Scalar(1));
    if (d == a) add(out, {index(c, b)}, Scalar(-sign_pow(parity(x) * parity(y))));
    return out;
  }

  // Product of elements of degree <= 1 (enough for a single evaluation layer).
  Element multiply(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [wx, cx] : x)
      for (const auto& [wy, cy] : y) {
        if (wx.size() > 1 || wy.size() > 1) throw std::domain_error("Enveloping::multiply supports degree <= 1 factors");
        const Scalar c = cx * cy;
        if (wx.empty() || wy.empty()) {
          Word w = wx.empty() ? wy : wx;
          add(out, w, c);
          continue;
        }
        const int g = wx[0], h = wy[0];
        if (g < h) {
          add(out, {g, h}, c);
        } else if (g > h) {
          // e_g e_h = (-1)^{|g||h|} e_h e_g + [e_g, e_h}
          add(out, {h, g}, c * sign_pow(parity(g) * parity(h)));
          for (const auto& [w, v] : bracket(g, h)) add(out, w, c * v);
        } else if (parity(g) == 0) {
          add(out, {g, g}, c);
        } else {
          // odd square: half the anticommutator
          for (const auto& [w, v] : bracket(g, g)) add(out, w, c * v / 2);
        }
      }
    return out;
  }

  static Element plus(Element a, const Element& b, const Scalar& s = 1) {
    for (const auto& [w, v] : b) add(a, w, v * s);
    return a;
  }
  static Element times(const Element& a, const Scalar& s) {
    Element out;
    for (const auto& [w, v] : a) add(out, w, v * s);
    return out;
  }

 private:
  static void add(Element& e, const Word& w, const Scalar& v) {
    if (is_zero(v)) return;
    auto [it, inserted] = e.try_emplace(w, v);
    if (!inserted) {
      it->second += v;
      if (is_zero(it->second)) e.erase(it);
    }
  }

  Signature sig_;
};

// Wrapper so symmetry_mismatch can treat enveloping elements like matrices.
struct UEntry {
  Enveloping::Element e;
  friend UEntry operator*(const UEntry& a, const Scalar& s) { return {Enveloping::times(a.e, s)}; }
  friend UEntry operator+(const UEntry& a, const UEntry& b) { return {Enveloping::plus(a.e, b.e)}; }
  friend bool operator==(const UEntry& a, const UEntry& b) { return a.e == b.e; }
};

// S(u) modes at p = 1 in U(gl(M|N)) through the evaluation convention chosen by RTT.
inline std::vector<std::vector<UEntry>> s_modes_enveloping(const Signature& sig, const ThetaVector& theta) {
  const Enveloping u(sig);
  const int n = sig.total();
  const EvalConvention& conv = evaluation_convention(sig);
  // T_1^{ij} as an element of U.
  std::vector<Enveloping::Element> t1(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = conv.sign;
      if (conv.grading == EvalGrading::row) s *= sign_pow(sig.parity(i));
      if (conv.grading == EvalGrading::column) s *= sign_pow(sig.parity(j));
      t1[i * n + j] = conv.placement == EvalPlacement::transpose ? Enveloping::times(u.generator(j, i), s)
                                                                 : Enveloping::times(u.generator(i, j), s);
    }
  auto t = [&](int level, int i, int j) -> Enveloping::Element {
    if (level == 0) return Enveloping::scalar(i == j ? 1 : 0);
    return t1[i * n + j];
  };
  auto tau = [&](int level, int i, int j) {
    return Enveloping::times(t(level, bar_index(sig, j), bar_index(sig, i)), sign_pow(level) * twist_sign(theta, i, j));
  };
  std::vector<std::vector<UEntry>> s(3, std::vector<UEntry>(n * n));
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            const int sg = detail::block_sign(sig, i, k, j);
            s[a + b][i * n + j].e = Enveloping::plus(s[a + b][i * n + j].e, u.multiply(t(a, i, k), tau(b, k, j)), sg);
          }
  return s;
}

// The symmetry relation in U(gl(M|N)) at p = 1, hence on every p = 1 module.
inline Report verify_s_symmetry_enveloping(const ThetaVector& theta, const Scalar& c = 1) {
  Report rep{theta.sig.is_plain() ? "twist" : "super", {}};
  auto s = s_modes_enveloping(theta.sig, theta);
  const int n = theta.sig.total();
  auto get = [&](int level, int i, int j) -> UEntry { return level <= 2 ? s[level][i * n + j] : UEntry{}; };
  auto bad = symmetry_mismatch<UEntry>(theta.sig, theta, 3, get, c);
  std::string name = "s-symmetry-enveloping[" + theta.sig.to_string() + ",p=1,theta=" + twist_name(theta.cls) +
                     ",c=" + to_string(c) + "]";
  rep.add(name, !bad, bad ? "symmetry relation fails in the enveloping algebra" : "",
          bad ? std::map<std::string, std::string>{{"mode", *bad}} : std::map<std::string, std::string>{});
  return rep;
}

}  // namespace ywkit
