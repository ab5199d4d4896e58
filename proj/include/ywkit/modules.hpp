#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "rmatrix.hpp"
#include "signature.hpp"

namespace ywkit {

struct ModuleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operator-valued N x N matrix: blocks[i * N + j] acts on the module.
using Blocks = std::vector<QMatrix>;

// T^{ij}(u) -> delta^{ij} + sign * g(i, j) e_{..} / u with e_ji (transpose) or
// e_ij (direct) placement, g a graded sign.
enum class EvalPlacement { transpose, direct };
enum class EvalGrading { none, row, column };

struct EvalConvention {
  EvalPlacement placement = EvalPlacement::direct;
  int sign = 1;
  EvalGrading grading = EvalGrading::none;

  std::string name() const {
    std::string s = std::string(sign > 0 ? "+" : "-") + (placement == EvalPlacement::transpose ? "e_ji" : "e_ij");
    if (grading == EvalGrading::row) s += "*(-1)^[i]";
    if (grading == EvalGrading::column) s += "*(-1)^[j]";
    return s;
  }
  friend bool operator==(const EvalConvention&, const EvalConvention&) = default;
};

// Candidates in the order they are tried; the transpose placement first.
inline std::vector<EvalConvention> evaluation_candidates(const Signature& sig) {
  std::vector<EvalConvention> out;
  std::vector<EvalGrading> gradings{EvalGrading::none};
  if (!sig.is_plain()) gradings = {EvalGrading::none, EvalGrading::row, EvalGrading::column};
  for (auto placement : {EvalPlacement::transpose, EvalPlacement::direct})
    for (int sign : {1, -1})
      for (auto g : gradings) out.push_back({placement, sign, g});
  return out;
}

struct EvaluationDatum {
  Signature sig;
  Scalar a = 0;
};

inline std::vector<int> vector_parity(const Signature& sig) {
  std::vector<int> p(sig.total());
  for (int i = 0; i < sig.total(); ++i) p[i] = sig.parity(i);
  return p;
}

// Finite-dimensional module of the truncated algebra: modes[n] for n = 0..L,
// truncation level p <= L (levels above p are kept to certify they vanish).
struct ModuleData {
  Signature sig;
  int dim = 0;
  std::vector<int> parity;
  int p = 0;
  std::vector<Blocks> modes;
  std::vector<Scalar> params;
  EvalConvention convention;

  int n() const { return sig.total(); }
  int stored_levels() const { return static_cast<int>(modes.size()) - 1; }
  const QMatrix& t(int level, int i, int j) const { return modes[level][i * n() + j]; }
};

namespace detail {

inline int block_sign(const Signature& sig, int i, int k, int j) {
  return sign_pow((sig.parity(i) + sig.parity(k)) * (sig.parity(k) + sig.parity(j)));
}

inline Blocks identity_blocks(const Signature& sig, int dim) {
  const int n = sig.total();
  Blocks b(n * n, QMatrix(dim, dim));
  for (int i = 0; i < n; ++i) b[i * n + i] = QMatrix::identity(dim);
  return b;
}

inline Blocks zero_blocks(const Signature& sig, int dim) { return Blocks(sig.total() * sig.total(), QMatrix(dim, dim)); }

}  // namespace detail

// (AB)^{ij} = sum_k (-1)^{([i]+[k])([k]+[j])} A^{ik} B^{kj}: product of matrices
// with entries in a superalgebra, E_ij (x) X multiplied in the graded tensor product.
inline Blocks block_product(const Signature& sig, const Blocks& a, const Blocks& b) {
  const int n = sig.total();
  Blocks out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      QMatrix acc(a[0].rows(), b[0].cols());
      for (int k = 0; k < n; ++k) {
        const QMatrix& x = a[i * n + k];
        const QMatrix& y = b[k * n + j];
        if (x.is_zero() || y.is_zero()) continue;
        acc = acc + x * y * Scalar(detail::block_sign(sig, i, k, j));
      }
      out[i * n + j] = std::move(acc);
    }
  return out;
}

// Coproduct on V1 (x) V2: T^{ij} -> sum_k (-1)^{([i]+[k])([k]+[j])} T^{ik} (x) T^{kj}.
inline Blocks coproduct_blocks(const Signature& sig, const Blocks& a, const std::vector<int>& pa, const Blocks& b,
                               const std::vector<int>& pb) {
  const int n = sig.total();
  const int dim = a[0].rows() * b[0].rows();
  Blocks out(n * n, QMatrix(dim, dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const QMatrix& x = a[i * n + k];
        const QMatrix& y = b[k * n + j];
        if (x.is_zero() || y.is_zero()) continue;
        out[i * n + j] = out[i * n + j] + graded_kron(x, pa, y, pb) * Scalar(detail::block_sign(sig, i, k, j));
      }
  return out;
}

inline std::vector<int> tensor_parity(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int x : a)
    for (int y : b) out.push_back((x + y) & 1);
  return out;
}

// Level-one blocks of the evaluation map on the vector representation.
inline Blocks evaluation_blocks(const Signature& sig, const EvalConvention& c) {
  const int n = sig.total();
  Blocks b = detail::zero_blocks(sig, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = c.sign;
      if (c.grading == EvalGrading::row) s *= sign_pow(sig.parity(i));
      if (c.grading == EvalGrading::column) s *= sign_pow(sig.parity(j));
      b[i * n + j] = c.placement == EvalPlacement::transpose ? QMatrix::unit(n, j, i) * Scalar(s)
                                                               : QMatrix::unit(n, i, j) * Scalar(s);
    }
  return b;
}

// Mode matrices as sparse operators on C^N (x) C^N (x) V, placed in aux slot 1
// or 2, with the graded signs of E_ij (x) 1 (x) X and 1 (x) E_ij (x) X.
inline RingMatrix<Scalar> place_in_slot(const Signature& sig, const std::vector<int>& pv, const Blocks& b, int slot) {
  const int n = sig.total(), dv = static_cast<int>(pv.size());
  RingMatrix<Scalar> out(n * n * dv);
  auto idx = [&](int x, int y, int a) { return (x * n + y) * dv + a; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const QMatrix& x = b[i * n + j];
      if (x.is_zero()) continue;
      for (int a = 0; a < dv; ++a)
        for (int c = 0; c < dv; ++c) {
          const Scalar& v = x(a, c);
          if (is_zero(v)) continue;
          const int px = (pv[a] + pv[c]) & 1;
          for (int w = 0; w < n; ++w) {
            if (slot == 1) {
              const int s = sign_pow(px * (sig.parity(j) + sig.parity(w)));
              out.set(idx(i, w, a), idx(j, w, c), v * Scalar(s));
            } else {
              const int s = sign_pow((sig.parity(i) + sig.parity(j)) * sig.parity(w)) *
                            sign_pow(px * (sig.parity(w) + sig.parity(j)));
              out.set(idx(w, i, a), idx(w, j, c), v * Scalar(s));
            }
          }
        }
    }
  return out;
}

inline RingMatrix<Scalar> lift_aux_pair(const RingMatrix<Scalar>& x, int dv) {
  RingMatrix<Scalar> out(x.dim() * dv);
  for (const auto& [ix, v] : x.entries())
    for (int a = 0; a < dv; ++a) out.set(ix.first * dv + a, ix.second * dv + a, v);
  return out;
}

// Polynomials in (u, v) with sparse matrix coefficients.
class OpBiPoly {
 public:
  using Key = std::pair<int, int>;
  explicit OpBiPoly(int dim) : dim_(dim) {}

  static OpBiPoly monomial(int du, int dv, const RingMatrix<Scalar>& m) {
    OpBiPoly p(m.dim());
    p.add(du, dv, m);
    return p;
  }
  // (alpha u + beta v) I + m
  static OpBiPoly linear(int dim, const Scalar& alpha, const Scalar& beta, const RingMatrix<Scalar>& m) {
    OpBiPoly p(dim);
    if (!is_zero(alpha)) p.add(1, 0, RingMatrix<Scalar>::identity(dim, alpha));
    if (!is_zero(beta)) p.add(0, 1, RingMatrix<Scalar>::identity(dim, beta));
    p.add(0, 0, m);
    return p;
  }

  void add(int du, int dv, const RingMatrix<Scalar>& m) {
    if (m.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({du, dv}, m);
    if (!inserted) {
      it->second += m;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Key, RingMatrix<Scalar>>& terms() const { return terms_; }

  friend OpBiPoly operator*(const OpBiPoly& a, const OpBiPoly& b) {
    OpBiPoly out(a.dim_);
    for (const auto& [ea, ma] : a.terms_)
      for (const auto& [eb, mb] : b.terms_) out.add(ea.first + eb.first, ea.second + eb.second, ma * mb);
    return out;
  }
  friend OpBiPoly operator-(OpBiPoly a, const OpBiPoly& b) {
    for (const auto& [e, m] : b.terms_) a.add(e.first, e.second, m * Scalar(-1));
    return a;
  }

  // First nonzero coefficient, as (u-degree, v-degree, row, col, value).
  std::optional<std::tuple<int, int, int, int, Scalar>> first_nonzero() const {
    for (const auto& [e, m] : terms_)
      if (!m.is_zero()) {
        const auto& [ix, v] = *m.entries().begin();
        return std::make_tuple(e.first, e.second, ix.first, ix.second, v);
      }
    return std::nullopt;
  }

 private:
  int dim_;
  std::map<Key, RingMatrix<Scalar>> terms_;
};

// Th(u) = sum_{n <= top} u^{top-n} modes[n], placed in an aux slot; `in_v`
// uses the second variable.
inline OpBiPoly series_in_slot(const Signature& sig, const std::vector<int>& pv, const std::vector<Blocks>& modes,
                               int top, int slot, bool in_v) {
  const int dim = sig.total() * sig.total() * static_cast<int>(pv.size());
  OpBiPoly out(dim);
  for (int n = 0; n <= top && n < static_cast<int>(modes.size()); ++n) {
    auto m = place_in_slot(sig, pv, modes[n], slot);
    if (in_v) {
      out.add(0, top - n, m);
    } else {
      out.add(top - n, 0, m);
    }
  }
  return out;
}

inline std::string mismatch_label(const std::tuple<int, int, int, int, Scalar>& t) {
  auto [du, dv, r, c, v] = t;
  return "u^" + std::to_string(du) + "v^" + std::to_string(dv) + " entry (" + std::to_string(r) + "," + std::to_string(c) +
         ") = " + to_string(v);
}

// R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v) with R(x) = I - P/x, after clearing
// (u - v) u^L v^L. Returns the first mismatch, if any.
inline std::optional<std::string> rtt_mismatch(const Signature& sig, const std::vector<int>& pv,
                                               const std::vector<Blocks>& modes, int top) {
  const int dv = static_cast<int>(pv.size());
  const int dim = sig.total() * sig.total() * dv;
  auto p12 = lift_aux_pair(build_permutation(sig), dv);
  auto r = OpBiPoly::linear(dim, 1, -1, p12 * Scalar(-1));
  auto t1 = series_in_slot(sig, pv, modes, top, 1, false);
  auto t2 = series_in_slot(sig, pv, modes, top, 2, true);
  auto diff = r * t1 * t2 - t2 * t1 * r;
  if (auto bad = diff.first_nonzero()) return mismatch_label(*bad);
  return std::nullopt;
}

inline std::string module_label(const ModuleData& m) {
  std::string s = "Y(" + m.sig.to_string() + "),params=(";
  for (std::size_t k = 0; k < m.params.size(); ++k) s += (k ? "," : "") + to_string(m.params[k]);
  return s + ")";
}

inline Report verify_rtt(const ModuleData& m) {
  Report rep{"reps", {}};
  auto bad = rtt_mismatch(m.sig, m.parity, m.modes, m.p);
  rep.add("rtt[" + module_label(m) + "]", !bad, bad ? "RTT identity fails" : "",
          bad ? std::map<std::string, std::string>{{"mismatch", *bad}} : std::map<std::string, std::string>{});
  return rep;
}

inline Report verify_truncation(const ModuleData& m) {
  Report rep{"reps", {}};
  for (int level = m.p + 1; level <= m.stored_levels(); ++level)
    for (int i = 0; i < m.n(); ++i)
      for (int j = 0; j < m.n(); ++j)
        if (!m.t(level, i, j).is_zero()) {
          rep.add("truncation[" + module_label(m) + "]", false, "mode above the truncation level is nonzero",
                  {{"mode", "T" + std::to_string(level) + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]"}});
          return rep;
        }
  rep.add("truncation[" + module_label(m) + "]", true, "",
          {{"levels_checked", std::to_string(m.stored_levels() - m.p)}, {"p", std::to_string(m.p)}});
  return rep;
}

struct ConventionChoice {
  EvalConvention convention;
  std::vector<std::pair<EvalConvention, bool>> tried;
};

// The first candidate whose a = 0 vector module satisfies RTT.
inline ConventionChoice select_evaluation_convention(const Signature& sig) {
  ConventionChoice out;
  const int n = sig.total();
  for (const auto& c : evaluation_candidates(sig)) {
    std::vector<Blocks> modes{detail::identity_blocks(sig, n), evaluation_blocks(sig, c)};
    bool ok = !rtt_mismatch(sig, vector_parity(sig), modes, 1);
    out.tried.push_back({c, ok});
    if (ok) {
      out.convention = c;
      return out;
    }
  }
  throw ModuleError("no evaluation convention satisfies RTT for " + sig.to_string());
}

inline const EvalConvention& evaluation_convention(const Signature& sig) {
  static std::map<std::pair<int, int>, EvalConvention> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(sig.even, sig.odd);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, select_evaluation_convention(sig).convention).first;
  return it->second;
}

// T(u - a) on the vector representation as a series to level `levels`:
// level n >= 1 is a^{n-1} X.
inline std::vector<Blocks> shifted_evaluation_series(const Signature& sig, const EvalConvention& c, const Scalar& a,
                                                     int levels) {
  const int n = sig.total();
  std::vector<Blocks> s{detail::identity_blocks(sig, n)};
  Blocks x = evaluation_blocks(sig, c);
  Scalar power = 1;
  for (int level = 1; level <= levels; ++level) {
    Blocks b(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) b[k] = x[k] * power;
    s.push_back(std::move(b));
    power *= a;
  }
  return s;
}

// Product of two operator series on V1 (x) V2 through the coproduct.
inline std::vector<Blocks> coproduct_series(const Signature& sig, const std::vector<Blocks>& a, const std::vector<int>& pa,
                                            const std::vector<Blocks>& b, const std::vector<int>& pb, int levels) {
  const int dim = a[0][0].rows() * b[0][0].rows();
  std::vector<Blocks> out(levels + 1, detail::zero_blocks(sig, dim));
  for (int m = 0; m <= levels && m < static_cast<int>(a.size()); ++m)
    for (int k = 0; m + k <= levels && k < static_cast<int>(b.size()); ++k) {
      auto c = coproduct_blocks(sig, a[m], pa, b[k], pb);
      for (std::size_t e = 0; e < c.size(); ++e) out[m + k][e] = out[m + k][e] + c[e];
    }
  return out;
}

// Tensor product of k evaluation modules at parameters a_i, renormalized by
// prod (1 - a_i/u); a module of the algebra truncated at p = k. Two extra
// levels are kept so truncation is checked, not assumed.
inline ModuleData tensor_modules(const std::vector<EvaluationDatum>& evs, int extra_levels = 2) {
  if (evs.empty()) throw std::invalid_argument("tensor_modules needs at least one factor");
  const Signature sig = evs.front().sig;
  for (const auto& e : evs)
    if (!(e.sig == sig)) throw std::invalid_argument("tensor factors must share a signature");
  const EvalConvention& conv = evaluation_convention(sig);
  const int k = static_cast<int>(evs.size());
  const int levels = k + extra_levels;

  std::vector<int> parity = vector_parity(sig);
  std::vector<Blocks> series = shifted_evaluation_series(sig, conv, evs[0].a, levels);
  for (int f = 1; f < k; ++f) {
    auto next = shifted_evaluation_series(sig, conv, evs[f].a, levels);
    series = coproduct_series(sig, series, parity, next, vector_parity(sig), levels);
    parity = tensor_parity(parity, vector_parity(sig));
  }

  // prod (1 - a_i w), w = 1/u.
  std::vector<Scalar> scale{Scalar(1)};
  for (const auto& e : evs) {
    std::vector<Scalar> next(scale.size() + 1);
    for (std::size_t d = 0; d < scale.size(); ++d) {
      next[d] += scale[d];
      next[d + 1] -= scale[d] * e.a;
    }
    scale = std::move(next);
  }
  const int dim = static_cast<int>(parity.size());
  std::vector<Blocks> modes(levels + 1, detail::zero_blocks(sig, dim));
  for (int m = 0; m <= levels; ++m)
    for (int d = 0; d < static_cast<int>(scale.size()) && m + d <= levels; ++d) {
      if (is_zero(scale[d])) continue;
      for (std::size_t e = 0; e < modes[m + d].size(); ++e) modes[m + d][e] = modes[m + d][e] + series[m][e] * scale[d];
    }

  ModuleData out{sig, dim, parity, k, std::move(modes), {}, conv};
  for (const auto& e : evs) out.params.push_back(e.a);
  return out;
}

// p = 1 module; for a != 0 this is T(u - a) renormalized by (1 - a/u).
inline ModuleData evaluation_module(const EvaluationDatum& ev) { return tensor_modules({ev}); }

// One-dimensional module T(u) = rho(u) 1, rho given by its coefficients.
inline ModuleData trivial_module(const Signature& sig, const std::vector<Scalar>& rho) {
  if (rho.empty() || rho[0] != 1) throw std::invalid_argument("rho must start with 1");
  const int p = std::max(1, static_cast<int>(rho.size()) - 1);
  std::vector<Blocks> modes(p + 1, detail::zero_blocks(sig, 1));
  for (int level = 0; level <= p; ++level) {
    const Scalar c = level < static_cast<int>(rho.size()) ? rho[level] : Scalar(0);
    for (int i = 0; i < sig.total(); ++i) modes[level][i * sig.total() + i] = QMatrix::identity(1, c);
  }
  return ModuleData{sig, 1, {0}, p, std::move(modes), {}, evaluation_convention(sig)};
}

inline ModuleData direct_sum(const ModuleData& a, const ModuleData& b) {
  if (!(a.sig == b.sig)) throw std::invalid_argument("direct_sum needs a common signature");
  const int levels = std::max(a.stored_levels(), b.stored_levels());
  const int dim = a.dim + b.dim;
  ModuleData out{a.sig, dim, a.parity, std::max(a.p, b.p), {}, a.params, a.convention};
  out.parity.insert(out.parity.end(), b.parity.begin(), b.parity.end());
  out.params.insert(out.params.end(), b.params.begin(), b.params.end());
  for (int level = 0; level <= levels; ++level) {
    Blocks blocks = detail::zero_blocks(a.sig, dim);
    for (int e = 0; e < a.n() * a.n(); ++e) {
      if (level <= a.stored_levels())
        for (int r = 0; r < a.dim; ++r)
          for (int c = 0; c < a.dim; ++c) blocks[e](r, c) = a.modes[level][e](r, c);
      if (level <= b.stored_levels())
        for (int r = 0; r < b.dim; ++r)
          for (int c = 0; c < b.dim; ++c) blocks[e](a.dim + r, a.dim + c) = b.modes[level][e](r, c);
    }
    out.modes.push_back(std::move(blocks));
  }
  return out;
}

// Dimension of {X : X T = T X for every mode}; rows are reduced as they are
// added so the system never exceeds dim^2 rows.
inline int commutant_dimension(const ModuleData& m) {
  const int d = m.dim, nv = d * d;
  std::vector<std::vector<Scalar>> rows;
  for (int level = 1; level <= m.p; ++level)
    for (int e = 0; e < m.n() * m.n(); ++e) {
      const QMatrix& t = m.modes[level][e];
      if (t.is_zero()) continue;
      // (X T - T X)_{rc} = sum_k X_{rk} T_{kc} - T_{rk} X_{kc}
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          std::vector<Scalar> row(nv);
          bool any = false;
          for (int k = 0; k < d; ++k) {
            if (!is_zero(t(k, c))) {
              row[r * d + k] += t(k, c);
              any = true;
            }
            if (!is_zero(t(r, k))) {
              row[k * d + c] -= t(r, k);
              any = true;
            }
          }
          if (any) rows.push_back(std::move(row));
        }
      rref(rows, nv);
    }
  return nv - static_cast<int>(rows.size());
}

struct Irreducibility {
  bool irreducible = false;
  int commutant_dimension = 0;
};

inline Irreducibility irreducibility(const ModuleData& m) {
  const int c = commutant_dimension(m);
  return {c == 1, c};
}

// Dimension of the submodule generated by v under all modes.
inline int cyclic_dimension(const ModuleData& m, const std::vector<Scalar>& v) {
  std::vector<std::vector<Scalar>> basis;
  std::vector<std::vector<Scalar>> frontier{v};
  auto independent = [&](const std::vector<Scalar>& x) {
    auto trial = basis;
    trial.push_back(x);
    return rank(trial, m.dim) > static_cast<int>(basis.size());
  };
  if (!independent(v)) return 0;
  basis.push_back(v);
  while (!frontier.empty()) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& x : frontier)
      for (int level = 1; level <= m.p; ++level)
        for (const auto& t : m.modes[level]) {
          std::vector<Scalar> y(m.dim);
          for (int r = 0; r < m.dim; ++r)
            for (int c = 0; c < m.dim; ++c)
              if (!is_zero(t(r, c)) && !is_zero(x[c])) y[r] += t(r, c) * x[c];
          if (independent(y)) {
            basis.push_back(y);
            next.push_back(y);
          }
        }
    frontier = std::move(next);
  }
  return static_cast<int>(basis.size());
}

struct HighestWeightSeries {
  bool ok = false;
  int kernel_dimension = 0;
  std::string failure;
  std::vector<Scalar> xi;
  std::vector<std::vector<Scalar>> mu;  // mu[i][n], n = 0..p
};

// Joint kernel of T_n^{ij}, i < j; it must be one-dimensional, and the
// diagonal modes must act on it by scalars.
inline HighestWeightSeries extract_highest_weight(const ModuleData& m) {
  HighestWeightSeries hw;
  std::vector<std::vector<Scalar>> rows;
  for (int level = 1; level <= m.p; ++level)
    for (int i = 0; i < m.n(); ++i)
      for (int j = i + 1; j < m.n(); ++j) {
        const QMatrix& t = m.t(level, i, j);
        for (int r = 0; r < m.dim; ++r) {
          std::vector<Scalar> row(m.dim);
          bool any = false;
          for (int c = 0; c < m.dim; ++c)
            if (!is_zero(t(r, c))) {
              row[c] = t(r, c);
              any = true;
            }
          if (any) rows.push_back(std::move(row));
        }
      }
  auto kernel = nullspace(rows, m.dim);
  hw.kernel_dimension = static_cast<int>(kernel.size());
  if (kernel.size() != 1) {
    hw.failure = "not a highest-weight-cyclic candidate (kernel dimension " + std::to_string(kernel.size()) + ")";
    return hw;
  }
  hw.xi = kernel.front();
  int pivot = 0;
  while (is_zero(hw.xi[pivot])) ++pivot;
  hw.mu.assign(m.n(), std::vector<Scalar>(m.p + 1));
  for (int i = 0; i < m.n(); ++i)
    for (int level = 0; level <= m.p; ++level) {
      const QMatrix& t = m.t(level, i, i);
      std::vector<Scalar> y(m.dim);
      for (int r = 0; r < m.dim; ++r)
        for (int c = 0; c < m.dim; ++c) y[r] += t(r, c) * hw.xi[c];
      const Scalar lambda = y[pivot] / hw.xi[pivot];
      for (int r = 0; r < m.dim; ++r)
        if (y[r] != lambda * hw.xi[r]) {
          hw.failure = "diagonal mode does not act by a scalar on the highest vector";
          return hw;
        }
      hw.mu[i][level] = lambda;
    }
  hw.ok = true;
  return hw;
}

struct DrinfeldDatum {
  bool ok = false;
  std::string failure;
  std::vector<std::vector<Scalar>> roots;  // roots of P_i, ascending
  std::vector<int> degrees;
  std::vector<Scalar> rho;  // coefficients of rho(u) in 1/u up to order N p
  int p = 0;

  int total_degree() const {
    int s = 0;
    for (int d : degrees) s += d;
    return s;
  }
  UPoly polynomial(int i) const {
    UPoly out = UPoly::constant(1);
    for (const auto& r : roots[i]) out = out * UPoly::linear_root(r);
    return out;
  }
};

// u^p mu(u) as a polynomial in u.
inline UPoly weight_polynomial(const std::vector<Scalar>& mu) {
  const int p = static_cast<int>(mu.size()) - 1;
  std::vector<Scalar> c(p + 1);
  for (int n = 0; n <= p; ++n) c[p - n] = mu[n];
  return UPoly(c);
}

// Solves mu^i / mu^{i+1} = P_i(u+1)/P_i(u) with P_i monic: after cancelling,
// each numerator root alpha pairs with a denominator root beta = alpha + m,
// m a positive integer, contributing roots alpha+1, ..., beta.
inline DrinfeldDatum drinfeld_from_weights(const HighestWeightSeries& hw) {
  DrinfeldDatum out;
  if (!hw.ok) {
    out.failure = hw.failure;
    return out;
  }
  const int n = static_cast<int>(hw.mu.size());
  out.p = static_cast<int>(hw.mu.front().size()) - 1;
  for (int i = 0; i + 1 < n; ++i) {
    UPoly a = weight_polynomial(hw.mu[i]), b = weight_polynomial(hw.mu[i + 1]);
    UPoly g = gcd(a, b);
    a = a.divmod(g).first.monic();
    b = b.divmod(g).first.monic();
    auto ra = rational_roots(a), rb = rational_roots(b);
    if (ra.cofactor.degree() > 0 || rb.cofactor.degree() > 0) {
      out.failure = "irrational roots are unsupported (factor " +
                    (ra.cofactor.degree() > 0 ? ra.cofactor : rb.cofactor).to_string() + ")";
      return out;
    }
    std::vector<Scalar> num = ra.roots, den = rb.roots, roots;
    std::vector<bool> used(num.size(), false);
    for (const auto& beta : den) {
      int pick = -1;
      for (std::size_t k = 0; k < num.size(); ++k) {
        if (used[k]) continue;
        Scalar diff = beta - num[k];
        if (diff > 0 && diff.get_den() == 1 && (pick < 0 || num[k] > num[pick])) pick = static_cast<int>(k);
      }
      if (pick < 0) {
        out.failure = "ratio for i=" + std::to_string(i + 1) + " is not of telescoping form (denominator root " +
                      to_string(beta) + ")";
        return out;
      }
      used[pick] = true;
      for (Scalar r = num[pick] + 1; r <= beta; r += 1) roots.push_back(r);
    }
    for (bool u : used)
      if (!u) {
        out.failure = "ratio for i=" + std::to_string(i + 1) + " has an unmatched numerator root";
        return out;
      }
    std::sort(roots.begin(), roots.end());
    // Cross-check P(u+1) b = P(u) a exactly.
    UPoly pol = UPoly::constant(1);
    for (const auto& r : roots) pol = pol * UPoly::linear_root(r);
    if (!(pol.shifted(1) * b == pol * a)) {
      out.failure = "telescoping solution does not reproduce the ratio";
      return out;
    }
    out.degrees.push_back(static_cast<int>(roots.size()));
    out.roots.push_back(std::move(roots));
  }
  out.rho.assign(n * out.p + 1, Scalar(0));
  for (int k = 0; k <= out.p; ++k) out.rho[k] = hw.mu.back()[k];
  out.ok = true;
  return out;
}


// Product of two weight series, truncated at the longer length + shorter - 1.
inline std::vector<std::vector<Scalar>> multiply_weights(const std::vector<std::vector<Scalar>>& a,
                                                         const std::vector<std::vector<Scalar>>& b) {
  std::vector<std::vector<Scalar>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].assign(a[i].size() + b[i].size() - 1, Scalar(0));
    for (std::size_t x = 0; x < a[i].size(); ++x)
      for (std::size_t y = 0; y < b[i].size(); ++y) out[i][x + y] += a[i][x] * b[i][y];
  }
  return out;
}

inline std::string roots_string(const std::vector<Scalar>& roots) {
  std::string s = "[";
  for (std::size_t k = 0; k < roots.size(); ++k) s += (k ? "," : "") + to_string(roots[k]);
  return s + "]";
}

// Highest weight of a tensor product, extracted from the joint kernel, against
// the product of the factors' weights; then the Drinfeld data and their degree bound.
inline Report verify_round_trip(const std::vector<EvaluationDatum>& evs) {
  Report rep{"reps", {}};
  auto m = tensor_modules(evs);
  const std::string label = module_label(m);
  auto hw = extract_highest_weight(m);
  if (!hw.ok) {
    rep.add("highest-weight[" + label + "]", false, hw.failure,
            {{"kernel_dimension", std::to_string(hw.kernel_dimension)}});
    return rep;
  }
  std::vector<std::vector<Scalar>> expect;
  std::vector<std::vector<Scalar>> factor_roots(m.n() - 1);
  for (const auto& e : evs) {
    auto f = extract_highest_weight(evaluation_module(e));
    auto fd = drinfeld_from_weights(f);
    if (!f.ok || !fd.ok) throw ModuleError("evaluation factor is not highest weight: " + f.failure + fd.failure);
    for (int i = 0; i + 1 < m.n(); ++i)
      factor_roots[i].insert(factor_roots[i].end(), fd.roots[i].begin(), fd.roots[i].end());
    expect = expect.empty() ? f.mu : multiply_weights(expect, f.mu);
  }
  bool same = true;
  for (int i = 0; i < m.n(); ++i)
    for (std::size_t k = 0; k < std::max(expect[i].size(), hw.mu[i].size()); ++k) {
      Scalar x = k < expect[i].size() ? expect[i][k] : Scalar(0);
      Scalar y = k < hw.mu[i].size() ? hw.mu[i][k] : Scalar(0);
      if (x != y) same = false;
    }
  rep.add("highest-weight[" + label + "]", same, same ? "" : "mu differs from the product of factor weights");

  auto d = drinfeld_from_weights(hw);
  if (!d.ok) {
    rep.add("drinfeld[" + label + "]", false, d.failure);
    return rep;
  }
  bool roots_match = true;
  std::map<std::string, std::string> payload;
  for (int i = 0; i + 1 < m.n(); ++i) {
    std::sort(factor_roots[i].begin(), factor_roots[i].end());
    if (factor_roots[i] != d.roots[i]) roots_match = false;
    payload["P" + std::to_string(i + 1)] = d.polynomial(i).to_string();
  }
  rep.add("drinfeld[" + label + "]", roots_match, roots_match ? "" : "Drinfeld roots differ from the factors'", payload);
  rep.add("degree-bound[" + label + "]", d.total_degree() <= m.p, "",
          {{"p", std::to_string(m.p)}, {"sum_degrees", std::to_string(d.total_degree())}});
  return rep;
}

// Commutant dimension of V(0) (x) V(a) across the sweep; the cyclic span of
// the highest vector is recorded as well, since a one-dimensional commutant
// does not rule out an indecomposable reducible module.
inline Report verify_irreducibility_sweep(const Signature& sig, const std::vector<Scalar>& as) {
  Report rep{"reps", {}};
  for (const auto& a : as) {
    auto m = tensor_modules({{sig, Scalar(0)}, {sig, a}});
    auto irr = irreducibility(m);
    std::map<std::string, std::string> payload{{"commutant_dimension", std::to_string(irr.commutant_dimension)}};
    auto hw = extract_highest_weight(m);
    payload["cyclic_dimension"] = hw.ok ? std::to_string(cyclic_dimension(m, hw.xi)) : "n/a";
    rep.add("commutant[" + module_label(m) + "]", irr.irreducible, irr.irreducible ? "" : "commutant is larger than the scalars",
            payload);
  }
  return rep;
}

}  // namespace ywkit
