#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace ywkit {

// Sparse polynomial in two commuting variables u, v with coefficients in C.
// C may be noncommutative (operator matrices); coefficient products keep the
// left-to-right order of the factors.
template <class C>
class BiPoly {
 public:
  using Exponent = std::pair<int, int>;  // (deg_u, deg_v)
  using Terms = std::map<Exponent, C>;

  BiPoly() = default;
  BiPoly(const C& c) { add(0, 0, c); }  // NOLINT: constants embed implicitly

  static BiPoly monomial(int du, int dv, const C& c) {
    BiPoly p;
    p.add(du, dv, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(int du, int dv) const {
    auto it = terms_.find({du, dv});
    return it == terms_.end() ? C{} : it->second;
  }

  void add(int du, int dv, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace({du, dv}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  int degree_u() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }
  int degree_v() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }

  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.terms_) add(e.first, e.second, C(c * Scalar(-1)));
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator-(const BiPoly& a) { return a * Scalar(-1); }

  friend BiPoly operator*(const BiPoly& a, const Scalar& s) {
    BiPoly out;
    for (const auto& [e, c] : a.terms_) out.add(e.first, e.second, C(c * s));
    return out;
  }
  friend BiPoly operator*(const Scalar& s, const BiPoly& a) { return a * s; }

  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

  // Substitutes v -> -v (used for the spectral flip u -> -u of one slot).
  BiPoly flip_v() const {
    BiPoly out;
    for (const auto& [e, c] : terms_) out.add(e.first, e.second, (e.second & 1) ? C(c * Scalar(-1)) : c);
    return out;
  }
  BiPoly flip_u() const {
    BiPoly out;
    for (const auto& [e, c] : terms_) out.add(e.first, e.second, (e.first & 1) ? C(c * Scalar(-1)) : c);
    return out;
  }
  // Exchanges the roles of u and v.
  BiPoly swap_variables() const {
    BiPoly out;
    for (const auto& [e, c] : terms_) out.add(e.second, e.first, c);
    return out;
  }

 private:
  Terms terms_;
};

template <class C>
bool is_zero(const BiPoly<C>& p) {
  return p.is_zero();
}

// Result type of a coefficient product; gmp expression templates collapse
// back to Scalar.
template <class A, class B>
struct product_type {
  using type = std::decay_t<decltype(std::declval<A>() * std::declval<B>())>;
};
template <>
struct product_type<Scalar, Scalar> {
  using type = Scalar;
};

template <class A, class B>
auto operator*(const BiPoly<A>& a, const BiPoly<B>& b) {
  using R = typename product_type<A, B>::type;
  BiPoly<R> out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms())
      out.add(ea.first + eb.first, ea.second + eb.second, R(ca * cb));
  return out;
}

using ScalarBiPoly = BiPoly<Scalar>;

inline ScalarBiPoly var_u() { return ScalarBiPoly::monomial(1, 0, Scalar(1)); }
inline ScalarBiPoly var_v() { return ScalarBiPoly::monomial(0, 1, Scalar(1)); }

inline std::string term_label(int du, int dv) {
  std::ostringstream os;
  os << "u^" << du << "*v^" << dv;
  return os.str();
}

struct DivisionError : std::runtime_error {
  DivisionError(const std::string& what, int du, int dv)
      : std::runtime_error(what), deg_u(du), deg_v(dv) {}
  int deg_u;
  int deg_v;
};

// Exact division num / den in Q[u,v] (coefficients of num may lie in any
// Q-module C). Uses lexicographic leading terms; the quotient is exact iff the
// reduction reaches zero. Throws DivisionError at the first term that cannot
// be reduced.
template <class C>
BiPoly<C> divide_exact(BiPoly<C> num, const ScalarBiPoly& den) {
  if (den.is_zero()) throw std::domain_error("divide_exact: zero divisor");
  const auto lead = *den.terms().rbegin();
  const Scalar inv_lead = 1 / lead.second;
  BiPoly<C> quotient;
  while (!num.is_zero()) {
    auto [e, c] = *num.terms().rbegin();
    int du = e.first - lead.first.first;
    int dv = e.second - lead.first.second;
    if (du < 0 || dv < 0)
      throw DivisionError("non-divisible remainder at " + term_label(e.first, e.second), e.first,
                          e.second);
    C qc = c * inv_lead;
    auto step = BiPoly<C>::monomial(du, dv, qc);
    quotient += step;
    num -= step * den;
  }
  return quotient;
}

// Dense univariate polynomial over Q, coefficients in ascending degree.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Scalar& s) { return UPoly({s}); }
  static UPoly linear_root(const Scalar& root) { return UPoly({-root, Scalar(1)}); }  // (x - root)

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar coefficient(int k) const { return k < static_cast<int>(c_.size()) && k >= 0 ? c_[k] : Scalar(0); }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(int(i)) + b.coefficient(int(i));
    return UPoly(std::move(out));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + b * Scalar(-1); }
  friend UPoly operator*(const UPoly& a, const Scalar& s) {
    std::vector<Scalar> out(a.c_);
    for (auto& x : out) x *= s;
    return UPoly(std::move(out));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(out));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // x -> x + s
  UPoly shifted(const Scalar& s) const {
    UPoly out;
    UPoly power = constant(Scalar(1));
    const UPoly step({s, Scalar(1)});
    for (const auto& coeff : c_) {
      out = out + power * coeff;
      power = power * step;
    }
    return out;
  }

  UPoly monic() const { return is_zero() ? *this : *this * (1 / leading()); }

  // Polynomial long division; returns {quotient, remainder}.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("UPoly::divmod by zero");
    std::vector<Scalar> rem(c_);
    std::vector<Scalar> quo(std::max(0, degree() - d.degree() + 1));
    for (int k = degree() - d.degree(); k >= 0; --k) {
      Scalar q = rem[k + d.degree()] / d.leading();
      quo[k] = q;
      for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= q * d.c_[j];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

  std::string to_string(char var = 'u') const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      if (ywkit::is_zero(c_[k])) continue;
      if (!first) os << " + ";
      first = false;
      os << ywkit::to_string(c_[k]);
      if (k > 0) os << "*" << var << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && ywkit::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  if (n == 0) return out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

struct RootExtraction {
  std::vector<Scalar> roots;  // with multiplicity, ascending
  UPoly cofactor;             // monic part without rational roots
};

// Rational-root extraction via the rational root theorem.
inline RootExtraction rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots of zero polynomial");
  RootExtraction out;
  UPoly rest = p.monic();
  while (rest.degree() > 0) {
    if (ywkit::is_zero(rest.coefficient(0))) {
      out.roots.push_back(Scalar(0));
      rest = rest.divmod(UPoly::linear_root(Scalar(0))).first;
      continue;
    }
    mpz_class lcm_den = 1;
    for (const auto& c : rest.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : rest.coefficients()) {
      Scalar scaled = c * Scalar(lcm_den);
      ints.push_back(scaled.get_num());
    }
    bool found = false;
    for (const auto& num : divisors(ints.front())) {
      for (const auto& den : divisors(ints.back())) {
        for (int s : {1, -1}) {
          Scalar candidate{mpz_class(num * s), den};
          candidate.canonicalize();
          if (ywkit::is_zero(rest(candidate))) {
            out.roots.push_back(candidate);
            rest = rest.divmod(UPoly::linear_root(candidate)).first;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.cofactor = rest;
  return out;
}

}  // namespace ywkit
