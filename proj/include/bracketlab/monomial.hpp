#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstddef>

namespace blab {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector x_0^e_0 ... x_{n-1}^e_{n-1}.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};

  int degree() const {
    int d = 0;
    for (auto e : exp) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }

  static Monomial variable(std::size_t i) {
    Monomial m;
    m.exp[i] = 1;
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = static_cast<std::uint8_t>(a.exp[i] + b.exp[i]);
    return m;
  }
  /// b divides a.
  friend bool divides(const Monomial& b, const Monomial& a) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (b.exp[i] > a.exp[i]) return false;
    return true;
  }

  auto operator<=>(const Monomial&) const = default;
};

/// Canonical term order used for storage and printing: higher total degree
/// first, then lexicographically larger exponent vector first (x > y > ...).
struct GrlexDesc {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.exp > b.exp;
  }
};

}  // namespace blab
