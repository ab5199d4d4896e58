#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "modules.hpp"
#include "report.hpp"
#include "scalar.hpp"
#include "signature.hpp"

namespace ywkit {

struct NlsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// n-particle creation sector at fixed distinct momenta; canonical basis is
// a^dag_{i1}(k1) ... a^dag_{in}(kn)|0> with k1 < ... < kn.
struct FockSector {
  Signature sig;
  std::vector<Scalar> momenta;

  int n() const { return static_cast<int>(momenta.size()); }
  int internal() const { return sig.total(); }
  int dim() const {
    int d = 1;
    for (int k = 0; k < n(); ++k) d *= internal();
    return d;
  }
};

inline std::string sector_label(const FockSector& s) {
  std::string out = "N=" + std::to_string(s.internal()) + ",k=(";
  for (int i = 0; i < s.n(); ++i) out += (i ? "," : "") + to_string(s.momenta[i]);
  return out + ")";
}

inline FockSector build_sector(std::vector<Scalar> momenta, int n_internal) {
  if (n_internal < 1) throw NlsError("internal dimension must be positive");
  std::sort(momenta.begin(), momenta.end());
  for (std::size_t i = 1; i < momenta.size(); ++i)
    if (momenta[i] == momenta[i - 1])
      throw NlsError("momenta must be distinct (R-matrix pole at zero argument): " + to_string(momenta[i]));
  return FockSector{Signature(n_internal), std::move(momenta)};
}

namespace detail {

inline int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Operator x on tensor position `pos` of (C^N)^{(x) n}.
inline QMatrix at_position(const QMatrix& x, int pos, int n, int N) {
  QMatrix out = QMatrix::identity(1);
  for (int k = 0; k < n; ++k) out = kron(out, k == pos ? x : QMatrix::identity(N));
  return out;
}

// Two-site operator on adjacent positions (pos, pos + 1).
inline QMatrix at_pair(const QMatrix& x, int pos, int n, int N) {
  return kron(kron(QMatrix::identity(ipow(N, pos)), x), QMatrix::identity(ipow(N, n - pos - 2)));
}

inline QMatrix swap_matrix(int N) {
  QMatrix p(N * N, N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) p(i * N + j, j * N + i) = 1;
  return p;
}

inline QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

}  // namespace detail

// Coefficients attached to a momentum word (not necessarily sorted).
struct WordState {
  std::vector<Scalar> word;
  QMatrix coeffs;  // column vector of length N^n
};

// Elementary exchange at adjacent positions (j, j+1): the word entries swap
// and the coefficients pass through P R(k_{j+1} - k_j), R(x) = I - P/x.
inline QMatrix exchange_matrix(const Scalar& left, const Scalar& right, int N) {
  QMatrix p = detail::swap_matrix(N);
  QMatrix r = QMatrix::identity(N * N) - p * (1 / Scalar(right - left));
  return p * r;
}

inline WordState exchange_at(const WordState& s, int j, int N) {
  const int n = static_cast<int>(s.word.size());
  if (s.word[j] == s.word[j + 1]) throw NlsError("exchange at coinciding momenta");
  WordState out{s.word, detail::at_pair(exchange_matrix(s.word[j], s.word[j + 1], N), j, n, N) * s.coeffs};
  std::swap(out.word[j], out.word[j + 1]);
  return out;
}

// Rewrites to the sorted word along `path` (positions of adjacent swaps, each
// removing an inversion); an empty path picks the leftmost inversion each time.
inline WordState exchange_normal_form(WordState s, int N, const std::vector<int>& path = {}) {
  for (int j : path) {
    if (!(s.word[j] > s.word[j + 1])) throw NlsError("path step does not remove an inversion");
    s = exchange_at(s, j, N);
  }
  for (;;) {
    int j = 0;
    while (j + 1 < static_cast<int>(s.word.size()) && !(s.word[j] > s.word[j + 1])) ++j;
    if (j + 1 >= static_cast<int>(s.word.size())) return s;
    s = exchange_at(s, j, N);
  }
}

// All sorting paths (sequences of inversion-removing adjacent swaps) of a word.
inline void sorting_paths(std::vector<Scalar> word, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  bool sorted = true;
  for (int j = 0; j + 1 < static_cast<int>(word.size()); ++j)
    if (word[j] > word[j + 1]) {
      sorted = false;
      std::swap(word[j], word[j + 1]);
      prefix.push_back(j);
      sorting_paths(word, prefix, out);
      prefix.pop_back();
      std::swap(word[j], word[j + 1]);
    }
  if (sorted) out.push_back(prefix);
}

// Composite exchange operator from the word's coefficient space to the
// canonical one along a path.
inline QMatrix path_operator(std::vector<Scalar> word, const std::vector<int>& path, int N) {
  const int n = static_cast<int>(word.size());
  QMatrix out = QMatrix::identity(detail::ipow(N, n));
  for (int j : path) {
    out = detail::at_pair(exchange_matrix(word[j], word[j + 1], N), j, n, N) * out;
    std::swap(word[j], word[j + 1]);
  }
  return out;
}

inline std::string word_label(const std::vector<Scalar>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + to_string(w[i]);
  return s + ")";
}

// Every permutation of the sector's momenta, every sorting path: the composite
// operators agree.
inline Report verify_path_independence(const FockSector& sec) {
  Report rep{"nls", {}};
  std::vector<Scalar> word = sec.momenta;
  int words = 0, paths = 0;
  do {
    std::vector<std::vector<int>> all;
    std::vector<int> prefix;
    sorting_paths(word, prefix, all);
    const QMatrix ref = path_operator(word, all.front(), sec.internal());
    for (std::size_t k = 1; k < all.size(); ++k)
      if (!(path_operator(word, all[k], sec.internal()) == ref)) {
        rep.add("path-independence[" + sector_label(sec) + "]", false, "two sorting paths disagree",
                {{"word", word_label(word)}});
        return rep;
      }
    ++words;
    paths += static_cast<int>(all.size());
  } while (std::next_permutation(word.begin(), word.end()));
  rep.add("path-independence[" + sector_label(sec) + "]", true, "",
          {{"paths", std::to_string(paths)}, {"words", std::to_string(words)}});
  return rep;
}

// Charges on a momentum word; basis t^a = E_ij with a = i*N + j.
struct ChargeSet {
  int N = 0;
  std::vector<Scalar> word;
  std::vector<QMatrix> q0, q1;
  std::vector<QMatrix> h;  // h[m] = sum_i k_i^m, m = 0..m_max

  std::string charge_name(int s, int a) const {
    return "Q" + std::to_string(s) + "[E" + std::to_string(a / N + 1) + std::to_string(a % N + 1) + "]";
  }
};

// gl(N) data for the f-term: [t_b, t_c] = f_bc^e t_e; with the trace form the
// dual of E_ij is E_ji. The f-term of Q1^a is (1/2) sum_b [t_a, t_b] (x) t^b.
struct GlData {
  int N;
  std::vector<QMatrix> basis;
  std::vector<int> dual;  // index of t^b in the basis

  explicit GlData(int n) : N(n) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        basis.push_back(QMatrix::unit(n, i, j));
        dual.push_back(j * n + i);
      }
  }
  int dim() const { return N * N; }
  // Coefficient of t_e in [t_a, t_b], read off the matrix entries.
  Scalar structure(int a, int b, int e) const {
    QMatrix c = detail::commutator(basis[a], basis[b]);
    return c(e / N, e % N);
  }
};

inline ChargeSet build_charges_for_word(const std::vector<Scalar>& word, int N, int m_max, bool with_f_term = true) {
  const int n = static_cast<int>(word.size());
  const int dim = detail::ipow(N, n);
  GlData gl(N);
  ChargeSet out{N, word, {}, {}, {}};
  for (int a = 0; a < gl.dim(); ++a) {
    QMatrix q0(dim, dim), q1(dim, dim);
    for (int i = 0; i < n; ++i) {
      QMatrix t = detail::at_position(gl.basis[a], i, n, N);
      q0 = q0 + t;
      q1 = q1 + t * word[i];
    }
    if (with_f_term)
      for (int b = 0; b < gl.dim(); ++b)
        for (int e = 0; e < gl.dim(); ++e) {
          const Scalar f = gl.structure(a, b, e);
          if (is_zero(f)) continue;
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
              q1 = q1 + detail::at_position(gl.basis[e], i, n, N) * detail::at_position(gl.basis[gl.dual[b]], j, n, N) *
                            (f / 2);
        }
    out.q0.push_back(std::move(q0));
    out.q1.push_back(std::move(q1));
  }
  for (int m = 0; m <= m_max; ++m) {
    Scalar e = 0;
    for (const auto& k : word) {
      Scalar pw = 1;
      for (int r = 0; r < m; ++r) pw *= k;
      e += pw;
    }
    out.h.push_back(QMatrix::identity(dim, e));
  }
  return out;
}

inline ChargeSet build_charges(const FockSector& sec, int m_max, bool with_f_term = true) {
  return build_charges_for_word(sec.momenta, sec.internal(), m_max, with_f_term);
}

// [H_m, Q_s^a] = 0, then descent: for every word and adjacent swap X_j,
// X_j Q(w) = Q(s_j w) X_j for s = 0, 1.
inline Report verify_symmetry(const FockSector& sec, const ChargeSet& c, bool with_f_term = true) {
  Report rep{"nls", {}};
  const std::string label = sector_label(sec);
  std::optional<std::string> bad;
  for (int m = 0; m < static_cast<int>(c.h.size()) && !bad; ++m)
    for (int a = 0; a < static_cast<int>(c.q0.size()) && !bad; ++a)
      for (int s = 0; s <= 1 && !bad; ++s)
        if (!detail::commutator(c.h[m], s == 0 ? c.q0[a] : c.q1[a]).is_zero())
          bad = "[H" + std::to_string(m) + "," + c.charge_name(s, a) + "]";
  rep.add("hierarchy-symmetry[" + label + ",m<=" + std::to_string(static_cast<int>(c.h.size()) - 1) + "]", !bad,
          bad ? "charge does not commute with a hierarchy Hamiltonian" : "",
          bad ? std::map<std::string, std::string>{{"commutator", *bad}} : std::map<std::string, std::string>{});

  std::vector<Scalar> word = sec.momenta;
  const int n = sec.n(), N = sec.internal();
  std::optional<std::map<std::string, std::string>> broken;
  int checked = 0;
  do {
    auto here = build_charges_for_word(word, N, 0, with_f_term);
    for (int j = 0; j + 1 < n && !broken; ++j) {
      std::vector<Scalar> swapped = word;
      std::swap(swapped[j], swapped[j + 1]);
      auto there = build_charges_for_word(swapped, N, 0, with_f_term);
      QMatrix x = detail::at_pair(exchange_matrix(word[j], word[j + 1], N), j, n, N);
      for (int a = 0; a < static_cast<int>(here.q0.size()) && !broken; ++a)
        for (int s = 0; s <= 1 && !broken; ++s) {
          const QMatrix& qa = s == 0 ? here.q0[a] : here.q1[a];
          const QMatrix& qb = s == 0 ? there.q0[a] : there.q1[a];
          if (!(x * qa == qb * x))
            broken = std::map<std::string, std::string>{
                {"charge", here.charge_name(s, a)}, {"pair", std::to_string(j + 1) + "," + std::to_string(j + 2)},
                {"word", word_label(word)}};
          ++checked;
        }
    }
  } while (!broken && std::next_permutation(word.begin(), word.end()));
  std::string name = "exchange-descent[" + label + "]";
  if (!with_f_term) name += "[no-f-term]";
  if (broken) {
    rep.add(name, false, "charges are not preserved by an elementary exchange", *broken);
  } else {
    rep.add(name, true, "", {{"conjugations", std::to_string(checked)}});
  }
  return rep;
}

// The sector as a tensor of evaluation modules at its momenta: modes above
// level p vanish and RTT holds; Q0, Q1 are recovered from T1, T2 via
// Q0[e_ji] = -T1^{ij} - delta_ij H1 and
// Q1[e_ji] = -(T2 - T1 T1 / 2)^{ij} - delta_ij (n + H2) / 2.
inline Report verify_truncation_on_sector(const FockSector& sec) {
  Report rep{"nls", {}};
  const std::string label = sector_label(sec);
  if (sec.n() == 0) {
    rep.add("sector-module[" + label + "]", true, "", {{"dimension", "1"}});
    return rep;
  }
  std::vector<EvaluationDatum> evs;
  for (const auto& k : sec.momenta) evs.push_back({sec.sig, k});
  auto m = tensor_modules(evs);
  auto trunc = verify_truncation(m);
  auto rtt = verify_rtt(m);
  const bool ok = trunc.passed() && rtt.passed();
  std::map<std::string, std::string> payload{{"p", std::to_string(m.p)}};
  if (!ok) payload["failure"] = trunc.passed() ? rtt.checks.front().payload.at("mismatch") : trunc.checks.front().payload.at("mode");
  rep.add("sector-module[" + label + "]", ok, ok ? "" : "sector is not a module of the truncated algebra", payload);

  if (m.p >= 2) {
    auto c = build_charges(sec, 2);
    const int N = sec.internal(), dim = m.dim;
    const Scalar h1 = c.h[1](0, 0), h2 = c.h[2](0, 0);
    std::optional<std::string> bad;
    for (int i = 0; i < N && !bad; ++i)
      for (int j = 0; j < N && !bad; ++j) {
        const int a = j * N + i;  // e_ji
        QMatrix q0 = m.t(1, i, j) * Scalar(-1) - QMatrix::identity(dim, i == j ? h1 : Scalar(0));
        QMatrix sq(dim, dim);
        for (int k = 0; k < N; ++k) sq = sq + m.t(1, i, k) * m.t(1, k, j);
        QMatrix q1 = (m.t(2, i, j) - sq * rational(1, 2)) * Scalar(-1) -
                     QMatrix::identity(dim, i == j ? (Scalar(sec.n()) + h2) / 2 : Scalar(0));
        if (!(q0 == c.q0[a])) bad = c.charge_name(0, a);
        if (!bad && !(q1 == c.q1[a])) bad = c.charge_name(1, a);
      }
    rep.add("sector-charges-from-modes[" + label + "]", !bad, bad ? "charge differs from the mode dictionary" : "",
            bad ? std::map<std::string, std::string>{{"charge", *bad}} : std::map<std::string, std::string>{});
  }
  return rep;
}

}  // namespace ywkit
