#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ywkit {

struct SignatureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Z2 grading datum (m|n): indices [0, m) are even, [m, m+n) are odd.
// Indices are 0-based throughout the library; printed names are 1-based.
struct Signature {
  int even = 0;
  int odd = 0;

  constexpr Signature() = default;
  constexpr Signature(int m, int n = 0) : even(m), odd(n) {
    if (m < 0 || n < 0 || m + n == 0)
      throw SignatureError("signature needs non-negative parts and a positive total");
  }

  constexpr int total() const { return even + odd; }
  constexpr bool is_plain() const { return odd == 0; }
  constexpr int parity(int i) const { return i >= even ? 1 : 0; }

  friend constexpr bool operator==(const Signature&, const Signature&) = default;

  std::string to_string() const {
    if (is_plain()) return std::to_string(even);
    return std::to_string(even) + "|" + std::to_string(odd);
  }

  // Accepts "N" (plain gl(N)) or "M|N".
  static Signature parse(std::string_view text) {
    auto parse_count = [&](std::string_view part) {
      if (part.empty() || part.size() > 3)
        throw SignatureError("malformed signature '" + std::string(text) + "'");
      int value = 0;
      for (char c : part) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw SignatureError("malformed signature '" + std::string(text) + "'");
        value = value * 10 + (c - '0');
      }
      return value;
    };
    auto bar = text.find('|');
    if (bar == std::string_view::npos) return Signature(parse_count(text), 0);
    return Signature(parse_count(text.substr(0, bar)), parse_count(text.substr(bar + 1)));
  }
};

}  // namespace ywkit
