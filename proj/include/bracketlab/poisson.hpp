#pragma once

#include <variant>
#include <vector>

#include "bracketlab/linalg.hpp"
#include "bracketlab/tensorcalc.hpp"

namespace blab {

/// A bivector together with its Schouten self-bracket. Operations that need
/// a genuine Poisson structure throw UnverifiedError unless verified().
class PoissonStructure {
 public:
  PoissonStructure() = default;
  /// Computes [[P,P]]; DomainError if P is not a bivector.
  explicit PoissonStructure(Multivector p);

  const Multivector& bivector() const { return p_; }
  const Context& context() const { return p_.context(); }
  bool verified() const { return defect_.is_zero(); }
  /// [[P,P]].
  const Multivector& defect() const { return defect_; }
  /// Throws UnverifiedError naming `op` when [[P,P]] != 0.
  void require_verified(const char* op) const;

 private:
  Multivector p_;
  Multivector defect_;
};

/// {a,b}_P = P(a,b) = P(a)(b). Works for any bivector.
Polynomial poisson_bracket(const Multivector& p, const Polynomial& a, const Polynomial& b);
/// [[P,P]].
Multivector jacobi_defect(const Multivector& p);
/// Cyclic Jacobi sum on all coordinate triples; the first nonzero one, or
/// zero when the bracket is Lie on generators.
Polynomial jacobi_on_generators(const Multivector& p);
/// Checks d_P(d_P X) = 0 for X over coordinate monomials up to degree
/// `cap` in every multivector degree, with d_P = [[P,.]] unchecked.
bool cochain_square_vanishes(const Multivector& p, int cap);

/// X_a = P(a).
Multivector hamiltonian(const Multivector& p, const Polynomial& a);
/// X{x_i,x_j} = {X x_i, x_j} + {x_i, X x_j} for all coordinate pairs.
bool is_canonical(const Multivector& p, const Multivector& x);

/// [[P, X]].
Multivector d_cochain(const PoissonStructure& ps, const Multivector& x);
/// d_P = [i_P, d] : Lambda^j -> Lambda^(j-1), normalised so that d_P(a db) = {a,b}_P.
Form d_chain(const PoissonStructure& ps, const Form& w);

/// Extended bracket of forms, built from {a,db} = {a,b}, {da,db} = d{a,b},
/// the Leibniz rule in the second slot and graded antisymmetry. Two 0-forms
/// give the zero element of degree -1.
Form extended_bracket(const PoissonStructure& ps, const Form& w, const Form& w2);
/// L^P_w = [d_P, (-1)^(jk) i_w] on D_k(A), d_P = [[P,.]]; degree shift 1 - j.
/// The sign makes the last-slot contraction a left operator.
Multivector lie_P_form(const PoissonStructure& ps, const Form& w, const Multivector& x);

struct CompatibilityReport {
  bool compatible = false;
  Multivector defect;  ///< [[P,P']]
};
/// [[P,P']] = 0; both inputs must be Poisson.
CompatibilityReport compatible(const PoissonStructure& p, const PoissonStructure& q);

struct MagriChain {
  PoissonStructure p, q;
  std::vector<Polynomial> elements;
  int degree_cap = 0;
};

struct MagriNoSolution {
  std::size_t step = 0;  ///< index of the element that could not be produced
  int degree_cap = 0;
};

using MagriStepResult = std::variant<Polynomial, MagriNoSolution>;
using MagriResult = std::variant<MagriChain, MagriNoSolution>;

/// Solves d_P(a_s) = d_Q(a_(s+1)) over monomials of degree <= cap; free
/// coordinates are set to zero. DomainError if the pair is not compatible.
MagriStepResult magri_step(const PoissonStructure& p, const PoissonStructure& q, const Polynomial& a, int cap);
/// Chain of `length` elements starting at `seed`.
MagriResult magri_chain(const PoissonStructure& p, const PoissonStructure& q, const Polynomial& seed,
                        std::size_t length, int cap);

struct InvolutionReport {
  bool in_involution = false;
  /// First failing pair (alpha, beta) and structure (0 = P, 1 = P').
  std::size_t alpha = 0, beta = 0;
  int structure = 0;
};
InvolutionReport involution_check(const Multivector& p, const Multivector& q, const std::vector<Polynomial>& chain);

}  // namespace blab
