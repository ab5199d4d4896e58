#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ywkit {

// Exact rational coefficient. gmpxx keeps results canonical (den > 0,
// gcd(num, den) = 1) after every arithmetic operation.
using Scalar = mpq_class;

inline Scalar rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  Scalar q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

// Zero test for generic coefficient rings, resolved by argument-dependent
// lookup at instantiation time.
template <class C>
bool coeff_is_zero(const C& c) {
  return is_zero(c);
}

// Canonical wire form, always "num/den" (integers render as "n/1").
inline std::string to_string(const Scalar& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Scalar q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  q.canonicalize();
  return q;
}

// (-1)^e
constexpr int sign_pow(int e) { return (e & 1) ? -1 : 1; }

}  // namespace ywkit
