#pragma once

#include "bracketlab/exterior.hpp"

namespace blab {

/// Exterior product of forms; degree adds, zero past n.
Form wedge_forms(const Form& a, const Form& b);
/// Exterior product of multivectors in the free-basis table.
Multivector wedge_multi(const Multivector& a, const Multivector& b);

template <Grade G>
Alternating<G> wedge(const Alternating<G>& a, const Alternating<G>& b) {
  if constexpr (G == Grade::Form)
    return wedge_forms(a, b);
  else
    return wedge_multi(a, b);
}

/// X(a) for X of degree i >= 1: the multivector of degree i-1 obtained by
/// feeding `a` into the last slot, i.e. the rule
///   (X ^ Y)(a) = X ^ Y(a) + (-1)^deg(Y) X(a) ^ Y.
Multivector mv_evaluate(const Multivector& x, const Polynomial& a);
/// X(a) for a derivation X (degree 1), as a polynomial.
Polynomial apply_derivation(const Multivector& x, const Polynomial& a);

Form de_rham(const Form& w);
/// d of a function, as a 1-form.
Form de_rham(const Polynomial& a);

/// i_X w for deg X = i <= j = deg w: the (j-i)-form obtained from
/// i(X (x) da ^ w') = i(X(a) (x) w'). Zero when i > j.
Form contract_form(const Multivector& x, const Form& w);
/// i_w X for deg w = j <= i = deg X: the multivector X(a_1)...(a_j) for
/// w = da_1 ^ ... ^ da_j. Zero when j > i.
Multivector contract_multi(const Form& w, const Multivector& x);

/// L_X = d o i_X - (-1)^i i_X o d, degree shift 1 - i.
Form lie_form(const Multivector& x, const Form& w);

/// Commutator of two derivations, computed directly from components.
Multivector lie_bracket(const Multivector& x, const Multivector& y);

/// Schouten bracket via the evaluation recursion
///   [[X,a]] = X(a), [[a,X']] = (-1)^i' X'(a),
///   [[X,X']](a) = [[X,X'(a)]] + (-1)^(i'-1) [[X(a),X']].
Multivector schouten(const Multivector& x, const Multivector& y);

/// Independent Schouten implementation: expands the second argument into
/// wedges of coordinate derivations and applies the Leibniz rule, graded
/// antisymmetry, and [[@i,@j]] = 0.
Multivector schouten_oracle(const Multivector& x, const Multivector& y);

}  // namespace blab
