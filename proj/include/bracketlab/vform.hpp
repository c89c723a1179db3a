#pragma once

#include <map>
#include <string>
#include <utility>

#include "bracketlab/exterior.hpp"

namespace blab {

/// Element of D_i(Lambda^j) = Lambda^j (x) D_i(A), stored as a table over
/// (form index tuple J, multivector index tuple I).
class VForm {
 public:
  struct KeyOrder {
    bool operator()(const std::pair<Mask, Mask>& a, const std::pair<Mask, Mask>& b) const {
      MaskOrder o;
      if (a.second != b.second) return o(a.second, b.second);
      return o(a.first, b.first);
    }
  };
  using Key = std::pair<Mask, Mask>;  // (form J, multi I)
  using Coeffs = std::map<Key, Polynomial, KeyOrder>;

  VForm() = default;
  VForm(Context ctx, int form_degree, int multi_degree)
      : ctx_(std::move(ctx)), j_(form_degree), i_(multi_degree) {}

  /// psi (x) X.
  static VForm tensor(const Form& psi, const Multivector& x);
  /// Assembles sum_I psi_I (x) @_I.
  static VForm from_components(const Context& ctx, int form_degree, int multi_degree,
                               const std::map<Mask, Form, MaskOrder>& comps);
  static VForm from_multivector(const Multivector& x) { return tensor(Form::scalar(Polynomial(x.context(), 1)), x); }
  static VForm from_form(const Form& w) { return tensor(w, Multivector::scalar(Polynomial(w.context(), 1))); }

  const Context& context() const { return ctx_; }
  std::size_t nvars() const { return ctx_ ? ctx_->size() : 0; }
  int form_degree() const { return j_; }
  int multi_degree() const { return i_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int max_coeff_degree() const;

  void add_term(Mask form, Mask multi, const Polynomial& c);
  void add_scaled(const VForm& o, const Rational& c);

  /// psi_I for every multi index I that has a nonzero component.
  std::map<Mask, Form, MaskOrder> components() const;
  Multivector as_multivector() const;  // requires form degree 0
  Form as_form() const;                // requires multi degree 0

  VForm& operator+=(const VForm& o) {
    add_scaled(o, 1);
    return *this;
  }
  VForm& operator-=(const VForm& o) {
    add_scaled(o, -1);
    return *this;
  }
  friend VForm operator+(VForm a, const VForm& b) { return a += b; }
  friend VForm operator-(VForm a, const VForm& b) { return a -= b; }
  VForm operator-() const;
  friend VForm operator*(const Rational& s, const VForm& a);
  friend VForm operator*(const Polynomial& f, const VForm& a);
  friend bool operator==(const VForm& a, const VForm& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.j_ == b.j_ && a.i_ == b.i_ && a.coeffs_ == b.coeffs_;
  }

  /// "(x*dx#@y) + (-dy#@x)"; each term parenthesised so it re-parses.
  std::string to_string() const;

 private:
  Context ctx_;
  int j_ = 0, i_ = 0;
  Coeffs coeffs_;
};

/// w ^ Omega, wedging onto the form leg.
VForm form_wedge(const Form& w, const VForm& om);

}  // namespace blab
