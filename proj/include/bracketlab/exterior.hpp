#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bracketlab/errors.hpp"
#include "bracketlab/polynomial.hpp"

namespace blab {

/// Strictly increasing index tuple, stored as a bit set.
using Mask = std::uint32_t;

inline int mask_size(Mask m) { return std::popcount(m); }
std::vector<std::size_t> mask_indices(Mask m);
Mask mask_of(const std::vector<std::size_t>& idx);
/// Position (0-based) of index i inside the sorted tuple m; m must contain i.
inline int mask_position(Mask m, std::size_t i) { return std::popcount(m & ((Mask{1} << i) - 1)); }
/// Sign of e_a ^ e_b -> e_{a|b}; 0 if a and b overlap.
int wedge_sign(Mask a, Mask b);
/// All masks of size k over n indices, in tuple-lexicographic order.
std::vector<Mask> subsets(std::size_t n, int k);
/// All masks over n indices (size 0..n).
std::vector<Mask> all_subsets(std::size_t n);

/// Tuple-lexicographic order for masks of equal size; smaller size first.
struct MaskOrder {
  bool operator()(Mask a, Mask b) const {
    int sa = mask_size(a), sb = mask_size(b);
    if (sa != sb) return sa < sb;
    Mask diff = a ^ b;
    if (!diff) return false;
    return (a & (diff & (~diff + 1))) != 0;
  }
};

enum class Grade { Form, Multi };

/// Homogeneous element of the free exterior algebra over Q[x_1..x_n]:
/// a differential form (basis dx_I) or a multivector (basis @x_I).
/// Antisymmetry is representational: only sorted index tuples are stored.
/// Degrees outside [0, n] are allowed and always hold the zero element.
template <Grade G>
class Alternating {
 public:
  using Coeffs = std::map<Mask, Polynomial, MaskOrder>;

  Alternating() = default;
  Alternating(Context ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

  static Alternating scalar(const Polynomial& p) {
    Alternating a(p.context(), 0);
    a.add_term(0, p);
    return a;
  }
  static Alternating basis(const Context& ctx, Mask m, const Polynomial& coef) {
    Alternating a(ctx, mask_size(m));
    a.add_term(m, coef);
    return a;
  }
  static Alternating basis(const Context& ctx, Mask m) { return basis(ctx, m, Polynomial(ctx, 1)); }

  const Context& context() const { return ctx_; }
  std::size_t nvars() const { return ctx_ ? ctx_->size() : 0; }
  int degree() const { return degree_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Polynomial coeff(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Polynomial(ctx_) : it->second;
  }
  /// Degree-0 element as a polynomial.
  Polynomial as_scalar() const {
    if (degree_ != 0) throw DomainError("element is not of degree 0");
    return coeff(0);
  }
  /// Largest total degree among coefficients; -1 if zero.
  int max_coeff_degree() const {
    int d = -1;
    for (const auto& [m, c] : coeffs_) d = std::max(d, c.degree());
    return d;
  }

  void add_term(Mask m, const Polynomial& c) {
    if (mask_size(m) != degree_) throw DomainError("basis element does not match element degree");
    if (ctx_ && (m >> nvars()) != 0) throw DomainError("basis index out of range");
    if (c.is_zero()) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
      coeffs_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  void add_scaled(const Alternating& o, const Rational& c) {
    check_compatible(o);
    if (c == 0) return;
    for (const auto& [m, p] : o.coeffs_) add_term(m, p * c);
  }

  Alternating& operator+=(const Alternating& o) {
    add_scaled(o, 1);
    return *this;
  }
  Alternating& operator-=(const Alternating& o) {
    add_scaled(o, -1);
    return *this;
  }
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  Alternating operator-() const {
    Alternating r = *this;
    for (auto& [m, c] : r.coeffs_) c = -c;
    return r;
  }
  friend Alternating operator*(const Rational& s, const Alternating& a) {
    Alternating r(a.ctx_, a.degree_);
    if (s == 0) return r;
    for (const auto& [m, c] : a.coeffs_) r.coeffs_.emplace(m, c * s);
    return r;
  }
  friend Alternating operator*(const Polynomial& f, const Alternating& a) {
    Alternating r(a.ctx_, a.degree_);
    for (const auto& [m, c] : a.coeffs_) r.add_term(m, f * c);
    return r;
  }

  /// Two zero elements compare equal regardless of degree.
  friend bool operator==(const Alternating& a, const Alternating& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  /// Canonical text, e.g. "x*dx^dy - (y + 1)*dy^dz" or "z*@x^@y".
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
      std::string basis_str;
      for (auto i : mask_indices(m)) {
        if (!basis_str.empty()) basis_str += '^';
        basis_str += (G == Grade::Form ? "d" : "@") + ctx_->name(i);
      }
      std::string term;
      bool negative = false;
      if (basis_str.empty()) {
        term = c.to_string();
        if (!first && term[0] == '-' && c.is_single_term()) {
          negative = true;
          term = term.substr(1);
        }
      } else if (c.is_single_term()) {
        std::string cs = c.to_string();
        if (cs[0] == '-') {
          negative = true;
          cs = cs.substr(1);
        }
        term = (cs == "1") ? basis_str : cs + "*" + basis_str;
      } else {
        term = "(" + c.to_string() + ")*" + basis_str;
      }
      if (first) {
        out = (negative ? "-" : "") + term;
      } else {
        out += (negative ? " - " : " + ") + term;
      }
      first = false;
    }
    return out;
  }

 private:
  void check_compatible(const Alternating& o) {
    if (!ctx_) ctx_ = o.ctx_;
    if (o.ctx_) require_same_context(ctx_, o.ctx_, "add");
    if (o.is_zero()) return;
    if (is_zero()) degree_ = o.degree_;
    if (o.degree_ != degree_) throw DomainError("cannot add elements of different degrees");
  }

  Context ctx_;
  int degree_ = 0;
  Coeffs coeffs_;
};

using Form = Alternating<Grade::Form>;
using Multivector = Alternating<Grade::Multi>;

/// Derivation sum_i comps[i] @x_i.
Multivector make_derivation(const Context& ctx, const std::vector<Polynomial>& comps);
/// Canonical zero of the given degree.
template <Grade G>
Alternating<G> zero_of(const Context& ctx, int degree) {
  return Alternating<G>(ctx, degree);
}

}  // namespace blab
