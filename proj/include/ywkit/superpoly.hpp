#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "scalar.hpp"
#include "signature.hpp"

namespace ywkit {

// Mode generator T_level^{row,col}. Level-0 modes are the constants
// delta^{row,col} and never appear as symbols. A negative level marks a
// central even fit parameter (used by the presentation fits); such symbols
// Poisson-commute with everything.
struct Gen {
  int level = 1;
  int row = 0;
  int col = 0;
  bool odd = false;

  // Total order (level, row, col); parity is a function of (row, col).
  friend bool operator==(const Gen& a, const Gen& b) {
    return a.level == b.level && a.row == b.row && a.col == b.col;
  }
  friend std::strong_ordering operator<=>(const Gen& a, const Gen& b) {
    return std::tie(a.level, a.row, a.col) <=> std::tie(b.level, b.row, b.col);
  }

  bool is_parameter() const { return level < 0; }
  int parity() const { return odd ? 1 : 0; }

  std::string name() const {
    if (is_parameter()) return "c" + std::to_string(row);
    return "T" + std::to_string(level) + "[" + std::to_string(row + 1) + "," +
           std::to_string(col + 1) + "]";
  }
};

inline Gen make_gen(const Signature& sig, int level, int row, int col) {
  return Gen{level, row, col, ((sig.parity(row) + sig.parity(col)) & 1) == 1};
}

inline Gen parameter_gen(int k) { return Gen{-1, k, 0, false}; }

using Monomial = std::vector<Gen>;

inline int monomial_parity(const Monomial& m) {
  int p = 0;
  for (const auto& g : m) p ^= g.parity();
  return p;
}

// Sorts a word of generators into canonical order. Returns the sign picked up
// from transposing odd generators, or 0 when an odd generator repeats.
inline int canonicalize(Monomial& word) {
  int sign = 1;
  for (std::size_t i = 1; i < word.size(); ++i) {
    for (std::size_t j = i; j > 0 && word[j] < word[j - 1]; --j) {
      if (word[j].odd && word[j - 1].odd) sign = -sign;
      std::swap(word[j], word[j - 1]);
    }
  }
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i].odd && word[i] == word[i - 1]) return 0;
  return sign;
}

// Element of the free supercommutative polynomial ring over Q. Every
// arithmetic result is in canonical form; `raw` admits unnormalized input
// which `normal_form` brings to canonical form.
class SuperPoly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  SuperPoly() = default;
  SuperPoly(const Scalar& c) {  // NOLINT: scalars embed implicitly
    if (!ywkit::is_zero(c)) terms_.emplace(Monomial{}, c);
  }
  SuperPoly(long c) : SuperPoly(Scalar(c)) {}  // NOLINT

  static SuperPoly generator(const Gen& g) {
    SuperPoly p;
    p.terms_.emplace(Monomial{g}, Scalar(1));
    return p;
  }

  // Unnormalized sum of words; see normal_form.
  static SuperPoly raw(std::vector<std::pair<Monomial, Scalar>> words) {
    SuperPoly p;
    for (auto& [w, c] : words) p.terms_[w] += c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  // Adds c * word, canonicalizing the word first.
  void add_word(Monomial word, const Scalar& c) {
    if (ywkit::is_zero(c)) return;
    int s = canonicalize(word);
    if (s == 0) return;
    accumulate(std::move(word), s > 0 ? c : Scalar(-c));
  }

  // Parity if homogeneous; nullopt for mixed parity. Zero counts as even.
  std::optional<int> parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
      int q = monomial_parity(m);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p.value_or(0);
  }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.size()));
    return d;
  }

  SuperPoly& operator+=(const SuperPoly& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  SuperPoly& operator-=(const SuperPoly& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }
  SuperPoly& operator*=(const Scalar& s) {
    if (ywkit::is_zero(s)) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator-(SuperPoly a) { return a *= Scalar(-1); }
  friend SuperPoly operator*(SuperPoly a, const Scalar& s) { return a *= s; }
  friend SuperPoly operator*(const Scalar& s, SuperPoly a) { return a *= s; }

  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    SuperPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial word;
        word.reserve(ma.size() + mb.size());
        word.insert(word.end(), ma.begin(), ma.end());
        word.insert(word.end(), mb.begin(), mb.end());
        int s = canonicalize(word);
        if (s == 0) continue;
        Scalar c = ca * cb;
        out.accumulate(std::move(word), s > 0 ? c : Scalar(-c));
      }
    }
    return out;
  }
  SuperPoly& operator*=(const SuperPoly& o) { return *this = *this * o; }

  friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << ywkit::to_string(c);
      for (const auto& g : m) os << "*" << g.name();
    }
    return os.str();
  }

 private:
  void accumulate(Monomial m, const Scalar& c) {
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) it->second += c;
    if (ywkit::is_zero(it->second)) terms_.erase(it);
  }

  Terms terms_;
};

inline bool is_zero(const SuperPoly& p) { return p.is_zero(); }

inline SuperPoly normal_form(const SuperPoly& x) {
  SuperPoly out;
  for (const auto& [m, c] : x.terms()) out.add_word(m, c);
  return out;
}

// Ring homomorphism induced by a parity-preserving map on generators.
inline SuperPoly substitute(const SuperPoly& x, const std::function<SuperPoly(const Gen&)>& image) {
  SuperPoly out;
  std::map<Gen, SuperPoly> cache;
  for (const auto& [m, c] : x.terms()) {
    SuperPoly term(c);
    for (const auto& g : m) {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, image(g)).first;
      term = term * it->second;
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

// Drops every monomial containing a mode of level above `p`.
inline SuperPoly truncate_levels(const SuperPoly& x, int p) {
  SuperPoly out;
  for (const auto& [m, c] : x.terms()) {
    bool keep = std::none_of(m.begin(), m.end(), [p](const Gen& g) { return g.level > p; });
    if (keep) out.add_word(m, c);
  }
  return out;
}

// Partial derivative with respect to an even generator.
inline SuperPoly derivative(const SuperPoly& x, const Gen& g) {
  SuperPoly out;
  for (const auto& [m, c] : x.terms()) {
    auto count = std::count(m.begin(), m.end(), g);
    if (count == 0) continue;
    Monomial rest = m;
    rest.erase(std::find(rest.begin(), rest.end(), g));
    out.add_word(std::move(rest), c * Scalar(static_cast<long>(count)));
  }
  return out;
}

inline SuperPoly evaluate_parameters(const SuperPoly& x, const std::map<int, Scalar>& values) {
  return substitute(x, [&](const Gen& g) -> SuperPoly {
    if (g.is_parameter()) {
      auto it = values.find(g.row);
      if (it != values.end()) return SuperPoly(it->second);
    }
    return SuperPoly::generator(g);
  });
}

// Evaluates x at a point given by `value` (even generators only).
inline Scalar evaluate(const SuperPoly& x, const std::function<Scalar(const Gen&)>& value) {
  Scalar acc = 0;
  for (const auto& [m, c] : x.terms()) {
    Scalar t = c;
    for (const auto& g : m) t *= value(g);
    acc += t;
  }
  return acc;
}

// Largest monomial in the canonical order (the map's last key).
inline const Monomial& leading_monomial(const SuperPoly& x) { return x.terms().rbegin()->first; }

}  // namespace ywkit
