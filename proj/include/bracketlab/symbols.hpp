#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bracketlab/exterior.hpp"

namespace blab {

/// Sum of c * x^alpha @^beta, stored in normal order (x's left of @'s).
class DiffOp {
 public:
  using Key = std::pair<Monomial, Monomial>;  // (alpha, beta)
  using Terms = std::map<Key, Rational>;

  DiffOp() = default;
  explicit DiffOp(Context ctx) : ctx_(std::move(ctx)) {}
  /// Multiplication by a.
  static DiffOp multiplication(const Polynomial& a);
  /// @_i.
  static DiffOp partial(Context ctx, std::size_t i);
  static DiffOp term(Context ctx, const Monomial& alpha, const Monomial& beta, const Rational& c = 1);

  const Context& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |beta|; -1 for the zero operator.
  int order() const;

  void add_term(const Monomial& alpha, const Monomial& beta, const Rational& c);
  Polynomial apply(const Polynomial& a) const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const Rational& c, const DiffOp& a);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  /// "x*@x + 1".
  std::string to_string() const;

 private:
  Context ctx_;
  Terms terms_;
};

/// a1 o a2, normal ordered with @_i x_i = x_i @_i + 1.
DiffOp do_compose(const DiffOp& a, const DiffOp& b);
DiffOp do_commutator(const DiffOp& a, const DiffOp& b);
/// [a_0,[a_1,...[a_k, D]...]] = 0 for the given multiplication operators.
bool order_criterion(const DiffOp& d, const std::vector<Polynomial>& as);

/// Base variables x_1..x_n followed by fiber variables p_x1..p_xn.
Context symbol_context(const Context& base);

/// Element of S_k(A): polynomial in x and p, homogeneous of degree k in p.
struct Symbol {
  Context base;
  Polynomial poly;  ///< over symbol_context(base)
  int grade = 0;
  friend bool operator==(const Symbol& a, const Symbol& b) { return a.grade == b.grade && a.poly == b.poly; }
  std::string to_string() const { return poly.to_string(); }
};

/// Symbol from a polynomial in x and p; DomainError unless homogeneous of degree k in p.
Symbol make_symbol(const Context& base, const Polynomial& poly, int k);
/// [D]_k: top-order part with @^beta replaced by p^beta; DomainError if order(D) > k.
Symbol symbol_of(const DiffOp& d, int k);
/// Normal-ordered representative x^alpha p^beta -> x^alpha @^beta.
DiffOp representative(const Symbol& s);

Symbol symbol_mul(const Symbol& a, const Symbol& b);
/// [D1 o D2 - D2 o D1]_(k1+k2-1) computed from representatives.
Symbol symbol_bracket(const Symbol& a, const Symbol& b);
/// The same bracket for explicit representatives of grades k1, k2.
Symbol symbol_bracket_of(const DiffOp& d1, int k1, const DiffOp& d2, int k2);
/// sum_i (@s1/@p_i @s2/@x_i - @s1/@x_i @s2/@p_i).
Symbol canonical_bracket(const Symbol& a, const Symbol& b);
/// symbol_bracket = sign * canonical_bracket; fixed once from {p, x}.
int symbol_bracket_sign();

/// rho = sum_i p_i dx_i over the symbol context.
Form canonical_rho(const Context& base);
/// i_{@x_i} rho = [@x_i]_1 for every coordinate derivation.
bool rho_relation_holds(const Context& base);
/// Bracket defined by Omega = d rho: X_f is fixed by i_{X_f} Omega = -df, and {f,g} = X_f(g).
Polynomial rho_bracket(const Context& base, const Polynomial& f, const Polynomial& g);

/// Algebra map S_*(A) -> A over the identity of A, fixed by the images of p_i.
struct SymbolHomomorphism {
  Context base;
  std::vector<Polynomial> images;  ///< phi(p_i)

  /// From images of every symbol-context variable; DomainError unless x_i -> x_i.
  static SymbolHomomorphism from_substitution(const Context& base, const std::vector<Polynomial>& all_images);
  Polynomial apply(const Polynomial& s) const;
};

/// phi_w(p_i) = i_{@x_i} w.
SymbolHomomorphism section_from_form(const Form& w);
/// w_phi = sum_i phi(p_i) dx_i.
Form form_from_section(const SymbolHomomorphism& phi);

}  // namespace blab
