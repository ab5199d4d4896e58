#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "scalar.hpp"
#include "signature.hpp"

namespace ywkit {

enum class TwistClass { plus, minus };

inline const char* twist_name(TwistClass c) { return c == TwistClass::plus ? "plus" : "minus"; }

struct TwistError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Reflected index: mirrors inside the even block and inside the odd block.
inline int bar_index(const Signature& sig, int i) {
  return i < sig.even ? sig.even - 1 - i : sig.even + sig.total() - 1 - i;
}

struct ThetaVector {
  Signature sig;
  TwistClass cls = TwistClass::plus;
  std::vector<int> theta;
  int theta0 = 1;

  int operator[](int i) const { return theta[i]; }
};

// Sign pattern of the transposition involution. Orthogonal plain case: all +1.
// Symplectic plain case: sign((N+1)/2 - i), N even. Super case: +1 on the even
// block, sign((2M+N+1)/2 - i) on the odd block, which must have even size.
inline ThetaVector make_theta(const Signature& sig, TwistClass cls) {
  ThetaVector t{sig, cls, std::vector<int>(sig.total(), 1), cls == TwistClass::plus ? 1 : -1};
  if (sig.is_plain()) {
    if (cls == TwistClass::minus) {
      const int n = sig.total();
      if (n % 2 != 0) throw TwistError("symplectic twist (theta minus) requires even N, got N=" + std::to_string(n));
      for (int i = 0; i < n; ++i) t.theta[i] = i < n / 2 ? 1 : -1;
    }
  } else {
    if (cls == TwistClass::minus)
      throw TwistError("super twist requires theta0=+1 (theta plus); theta minus is not admissible");
    if (sig.odd % 2 != 0)
      throw TwistError("super twist requires an odd block of even size, got " + sig.to_string());
    for (int i = sig.even; i < sig.total(); ++i) t.theta[i] = (i - sig.even) < sig.odd / 2 ? 1 : -1;
  }
  for (int i = 0; i < sig.total(); ++i)
    if (sign_pow(sig.parity(i)) * t.theta[i] * t.theta[bar_index(sig, i)] != t.theta0)
      throw TwistError("theta vector violates the reflection constraint");
  return t;
}

// Sign of the twisted transposition on index pair (i, j):
// (-1)^{[i]([j]+1)} theta_i theta_j. Reduces to theta_i theta_j when plain.
inline int twist_sign(const ThetaVector& t, int i, int j) {
  const Signature& s = t.sig;
  return sign_pow(s.parity(i) * (s.parity(j) + 1)) * t.theta[i] * t.theta[j];
}

// Graded permutation: Kronecker entries (-1)^{[i][j]} at ((i,j),(j,i)).
inline RingMatrix<Scalar> build_permutation(const Signature& sig) {
  const int d = sig.total();
  RingMatrix<Scalar> p(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p.set(i * d + j, j * d + i, Scalar(sign_pow(sig.parity(i) * sig.parity(j))));
  return p;
}

// Applies the theta-transpose to the first tensor slot of a d^2 x d^2 matrix:
// E_ab -> twist_sign(b', a') E_{b' a'} with x' = bar_index(x).
inline RingMatrix<Scalar> theta_transpose_slot1(const RingMatrix<Scalar>& x, const ThetaVector& t) {
  const int d = t.sig.total();
  RingMatrix<Scalar> out(d * d);
  for (const auto& [ix, v] : x.entries()) {
    const int a = ix.first / d, c = ix.first % d;
    const int b = ix.second / d, e = ix.second % d;
    const int nr = bar_index(t.sig, b), nc = bar_index(t.sig, a);
    out.add(nr * d + c, nc * d + e, Scalar(v * twist_sign(t, nr, nc)));
  }
  return out;
}

// Q = sum_ij theta_i theta_j E_ij (x) E_{bar i, bar j} in the plain case; the
// graded case is defined as the theta-transpose of the graded permutation.
inline RingMatrix<Scalar> build_q_tensor(const ThetaVector& t) {
  const Signature& sig = t.sig;
  if (!sig.is_plain()) return theta_transpose_slot1(build_permutation(sig), t);
  const int d = sig.total();
  RingMatrix<Scalar> q(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      q.set(i * d + bar_index(sig, i), j * d + bar_index(sig, j), Scalar(t.theta[i] * t.theta[j]));
  return q;
}

enum class RKind { plain, primed };

// R(x) = I - residue / x. Plain: residue = P; primed: residue = Q.
struct RMatrix {
  Signature sig;
  RKind kind = RKind::plain;
  std::optional<ThetaVector> theta;
  RingMatrix<Scalar> residue;

  int dim() const { return sig.total(); }
};

inline RMatrix build_rational_r(const Signature& sig) { return RMatrix{sig, RKind::plain, std::nullopt, build_permutation(sig)}; }

inline RMatrix build_primed_r(const ThetaVector& t) { return RMatrix{t.sig, RKind::primed, t, build_q_tensor(t)}; }

// Evaluates x * R(x) = x I - residue at a polynomial argument.
template <class Poly>
RingMatrix<Poly> cleared_r(const RMatrix& r, const Poly& x) {
  const int n = r.residue.dim();
  RingMatrix<Poly> out(n);
  for (int i = 0; i < n; ++i) out.set(i, i, x);
  for (const auto& [ix, v] : r.residue.entries()) out.add(ix.first, ix.second, Poly(Scalar(-v)));
  return out;
}

// Places a two-slot operator into slots (s1, s2) of a three-fold tensor
// product, with graded signs from moving odd components past the idle slot.
inline RingMatrix<Scalar> embed3(const RingMatrix<Scalar>& x, int s1, int s2, const Signature& sig) {
  const int d = sig.total();
  RingMatrix<Scalar> out(d * d * d);
  auto par = [&](int i) { return sig.parity(i); };
  for (const auto& [ix, v] : x.entries()) {
    const int a = ix.first / d, c = ix.first % d;
    const int a2 = ix.second / d, c2 = ix.second % d;
    for (int b = 0; b < d; ++b) {
      int row = 0, col = 0, s = 1;
      if (s1 == 1 && s2 == 2) {
        row = (a * d + c) * d + b;
        col = (a2 * d + c2) * d + b;
        s = sign_pow((par(a) + par(a2) + par(c) + par(c2)) * par(b));
      } else if (s1 == 2 && s2 == 3) {
        row = (b * d + a) * d + c;
        col = (b * d + a2) * d + c2;
      } else if (s1 == 1 && s2 == 3) {
        row = (a * d + b) * d + c;
        col = (a2 * d + b) * d + c2;
        s = sign_pow((par(a) + par(a2)) * par(b));
      } else {
        throw std::invalid_argument("embed3: slots must be (1,2), (1,3) or (2,3)");
      }
      out.set(row, col, Scalar(v * s));
    }
  }
  return out;
}

inline std::string compound_label(int index, int d, int factors) {
  std::string out;
  std::vector<int> digits(factors);
  for (int k = factors - 1; k >= 0; --k) {
    digits[k] = index % d + 1;
    index /= d;
  }
  for (int k = 0; k < factors; ++k) out += (k ? "," : "") + std::to_string(digits[k]);
  return "(" + out + ")";
}

// First mismatching (entry, monomial) between two polynomial matrices.
inline std::optional<std::map<std::string, std::string>> first_mismatch(const RingMatrix<ScalarBiPoly>& lhs,
                                                                        const RingMatrix<ScalarBiPoly>& rhs, int d,
                                                                        int factors) {
  auto diff = lhs - rhs;
  if (diff.is_zero()) return std::nullopt;
  const auto& [ix, poly] = *diff.entries().begin();
  const auto& [e, c] = *poly.terms().begin();
  return std::map<std::string, std::string>{
      {"entry", compound_label(ix.first, d, factors) + "x" + compound_label(ix.second, d, factors)},
      {"monomial", term_label(e.first, e.second)},
      {"lhs", to_string(lhs.at(ix.first, ix.second).coefficient(e.first, e.second))},
      {"rhs", to_string(rhs.at(ix.first, ix.second).coefficient(e.first, e.second))}};
}

// R12(u-v) R13(u) R23(v) = R23(v) R13(u) R12(u-v), denominators cleared.
inline Report check_ybe(const RMatrix& r) {
  Report rep{"ybe", {}};
  const Signature& sig = r.sig;
  const int d = sig.total();
  auto lift = [&](const RingMatrix<Scalar>& x, const ScalarBiPoly& arg) {
    RingMatrix<ScalarBiPoly> out(x.dim());
    for (int i = 0; i < x.dim(); ++i) out.set(i, i, arg);
    for (const auto& [ix, v] : x.entries()) out.add(ix.first, ix.second, ScalarBiPoly(Scalar(-v)));
    return out;
  };
  const auto u = var_u(), v = var_v();
  auto r12 = lift(embed3(r.residue, 1, 2, sig), u - v);
  auto r13 = lift(embed3(r.residue, 1, 3, sig), u);
  auto r23 = lift(embed3(r.residue, 2, 3, sig), v);
  auto lhs = r12 * r13 * r23;
  auto rhs = r23 * r13 * r12;
  auto bad = first_mismatch(lhs, rhs, d, 3);
  rep.add("ybe[" + sig.to_string() + "]", !bad, bad ? "Yang-Baxter identity violated" : "",
          bad.value_or(std::map<std::string, std::string>{}));
  return rep;
}

// x R(x) * (-x) R(-x) = (1 - x^2) I, i.e. R(x) R(-x) = (1 - x^-2) I.
inline Report check_unitarity(const RMatrix& r) {
  Report rep{"unitarity", {}};
  const int n = r.residue.dim();
  const auto x = var_u();
  auto a = cleared_r(r, x);
  auto b = cleared_r(r, x * Scalar(-1));
  RingMatrix<ScalarBiPoly> expected(n);
  for (int i = 0; i < n; ++i) expected.set(i, i, ScalarBiPoly(Scalar(1)) - x * x);
  auto bad = first_mismatch(a * b, expected, r.sig.total(), 2);
  rep.add("unitarity[" + r.sig.to_string() + "]", !bad, bad ? "R(x)R(-x) != (1-x^-2) I" : "",
          bad.value_or(std::map<std::string, std::string>{}));
  return rep;
}

// Classical YBE for r(x) = X/x with arguments (u-v, u, v), multiplied through
// by (u-v)uv: v[X12,X13] + u[X12,X23] + (u-v)[X13,X23] = 0.
inline Report check_classical_ybe(const RingMatrix<Scalar>& x, const Signature& sig, const std::string& label = "r") {
  Report rep{"classical-ybe", {}};
  const int d = sig.total();
  auto x12 = embed3(x, 1, 2, sig), x13 = embed3(x, 1, 3, sig), x23 = embed3(x, 2, 3, sig);
  auto scale = [](const RingMatrix<Scalar>& m, const ScalarBiPoly& f) {
    return m.map([&](const Scalar& c) { return f * c; });
  };
  const auto u = var_u(), v = var_v();
  auto total = scale(commutator(x12, x13), v) + scale(commutator(x12, x23), u) + scale(commutator(x13, x23), u - v);
  auto bad = first_mismatch(total, RingMatrix<ScalarBiPoly>(total.dim()), d, 3);
  rep.add("classical-ybe[" + sig.to_string() + "," + label + "]", !bad, bad ? "classical YBE violated" : "",
          bad.value_or(std::map<std::string, std::string>{}));
  return rep;
}

}  // namespace ywkit
