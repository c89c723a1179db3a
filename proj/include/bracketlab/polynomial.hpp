#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "bracketlab/context.hpp"
#include "bracketlab/monomial.hpp"

namespace blab {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Sparse multivariate polynomial over Q. No zero coefficients are stored,
/// so structural equality is mathematical equality.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexDesc>;

  Polynomial() = default;  // zero over no context; adopts a context on first use
  explicit Polynomial(Context ctx) : ctx_(std::move(ctx)) {}
  Polynomial(Context ctx, const Rational& c);

  static Polynomial variable(Context ctx, std::size_t i);
  static Polynomial monomial(Context ctx, const Monomial& m, const Rational& c = 1);

  const Context& context() const { return ctx_; }
  std::size_t nvars() const { return ctx_ ? ctx_->size() : 0; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Lowest total degree among terms; -1 for zero.
  int min_degree() const;
  Rational coeff(const Monomial& m) const;
  Rational constant_term() const { return coeff(Monomial{}); }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  /// Adds c * m * p in place (the hot path of most kernels).
  void add_scaled(const Polynomial& p, const Rational& c, const Monomial& m = Monomial{});
  void add_term(const Monomial& m, const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Formal partial derivative with respect to variable i.
  Polynomial diff(std::size_t i) const;
  Polynomial pow(unsigned k) const;
  /// Homogeneous component of total degree d.
  Polynomial homogeneous_part(int d) const;
  /// Substitutes variable i by images[i]; all images share one target context.
  Polynomial substitute(const std::vector<Polynomial>& images, const Context& target) const;
  /// Re-expresses over `target`, variable i going to index map[i].
  Polynomial embed(const Context& target, const std::vector<std::size_t>& map) const;

  /// Canonical text: "x^2 + 2*x*y - 1/3".
  std::string to_string() const;
  /// True when printing needs parentheses as a factor ("x + 1" yes, "-3*x" no).
  bool is_single_term() const { return terms_.size() <= 1; }

 private:
  Context ctx_;
  Terms terms_;
};

/// Same as `a * b` but named, with the spec'd context check.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
/// Partial derivative; DomainError if i >= n.
Polynomial poly_diff(const Polynomial& p, std::size_t i);

std::string monomial_to_string(const Monomial& m, const VariableContext& ctx);

/// All monomials in n variables with total degree in [lo, hi], in canonical order.
std::vector<Monomial> monomials_up_to(std::size_t n, int hi, int lo = 0);

}  // namespace blab
