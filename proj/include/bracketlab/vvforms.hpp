#pragma once

#include <optional>
#include <string>
#include <variant>

#include "bracketlab/linalg.hpp"
#include "bracketlab/parallel.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vform.hpp"

namespace blab {

/// Inner product D_i(Lambda^j) (x) Lambda^k -> Lambda^(k+j-i):
/// sum_I psi_I ^ i_{@_I} w.
Form vform_contract(const VForm& om, const Form& w);
/// The same for multi-degree 1 (form-valued derivations); DomainError otherwise.
Form vv_contract(const VForm& om, const Form& w);

/// L_Omega = (-1)^j [d, i_Omega] for Omega in D_i(Lambda^j); shift j - i + 1.
/// Agrees with lie_form when j = 0.
Form lie_general(const VForm& om, const Form& w);
/// L_Omega = [i_Omega, d] for Omega in D_1(Lambda^k); shift k. L_N = d for the identity N.
Form vv_lie(const VForm& om, const Form& w);

/// i_Omega Omega': i_Omega applied to the form leg of Omega'.
VForm vform_insert(const VForm& om, const VForm& other);

/// Frolicher-Nijenhuis bracket, defined on decomposable terms
///   [[w^X, w'^X']] = w^w'^[X,X'] + w^L_X(w')^X' - L_X'(w)^w'^X
///                    + (-1)^j dw^i_X(w')^X' + (-1)^j i_X'(w)^dw'^X.
VForm fn_bracket(const VForm& a, const VForm& b);

/// Nijenhuis-Richardson bracket i_Omega(Omega') - (-1)^((j-1)(j'-1)) i_Omega'(Omega).
VForm nr_bracket(const VForm& a, const VForm& b);

struct IntegrabilityReport {
  bool integrable = false;
  VForm defect;  ///< [[N,N]]
};
IntegrabilityReport is_integrable(const VForm& n);

/// d_N = L_N for integrable N in D_1(Lambda^1); UnverifiedError otherwise.
Form d_N(const VForm& n, const Form& w);
/// d - d_N.
Form d_N_bar(const VForm& n, const Form& w);

/// Inner product D_i(Lambda^j) (x) D_k(A) -> D_(k-j+i)(A): sum_I @_I ^ i_{psi_I} X.
Multivector vform_contract_multi(const VForm& om, const Multivector& x);
/// [[P, .]] without a Poisson check.
Multivector poisson_differential_raw(const Multivector& p, const Multivector& x);
/// L^P_Omega = [d_P, (-1)^(jk) i_Omega] on D_k(A); shift i - j + 1. UnverifiedError if [[P,P]] != 0.
Multivector lie_P_general(const Multivector& p, const VForm& om, const Multivector& x);

// ---------------------------------------------------------------------------
// Bracket extraction: solve L_B = [L_Omega, L_Omega'] for B by exact linear
// algebra over a degree-capped coefficient space.

enum class LieKind {
  LieByMultivector,  ///< L_X on forms, X in D_i(A)
  LieByVForm,        ///< L_Omega on forms, Omega in D_1(Lambda^k)
  GeneralLie,        ///< L_Omega on forms, Omega in D_i(Lambda^j)
  PoissonLie,        ///< L^P_Omega on multivectors
};

struct SpaceDescriptor {
  int multi_degree = 0;
  int form_degree = 0;
};

struct BracketProblem {
  LieKind kind = LieKind::GeneralLie;
  VForm lhs, rhs;
  std::optional<SpaceDescriptor> target;  ///< defaults to the natural target for the kind
  int degree_cap = 2;
  std::optional<Multivector> poisson;  ///< required for PoissonLie
};

struct ExtractedBracket {
  VForm element;
  std::size_t nullity = 0;
  std::size_t equations = 0;
  std::size_t arguments = 0;
};

struct NoRepresentative {
  int degree_cap = 0;
  std::string witness;  ///< first test argument whose equations are inconsistent
  std::size_t arguments_checked = 0;
};

using ExtractResult = std::variant<ExtractedBracket, NoRepresentative>;

/// Grading shift of the operator family for `om` under `kind`.
int lie_shift(LieKind kind, const VForm& om);
/// Applies the Lie action of `om`. Form arguments for the form kinds,
/// multivector arguments (as VForm with form degree 0) for PoissonLie.
VForm apply_lie(LieKind kind, const VForm& om, const VForm& arg, const std::optional<Multivector>& poisson);

/// DomainError when no target is consistent with the grading.
ExtractResult extract_bracket(const BracketProblem& prob, Exec exec = Exec::Serial);

}  // namespace blab
