#pragma once

#include <vector>

#include "bracketlab/cohoengine.hpp"
#include "bracketlab/vform.hpp"

namespace blab {

/// Connection for A = Q[x_1..x_m] -> B = Q[x_1..x_m, u_1..u_r]:
/// nabla(@x_i) = @x_i + sum_a gamma[i][a] @u_a.
class Connection {
 public:
  Connection(Context total, std::size_t base_count, std::vector<std::vector<Polynomial>> gamma);
  /// All gamma zero.
  static Connection trivial(Context total, std::size_t base_count);

  const Context& context() const { return ctx_; }
  std::size_t base_count() const { return m_; }
  std::size_t fiber_count() const { return ctx_->size() - m_; }
  const Polynomial& gamma(std::size_t i, std::size_t a) const { return gamma_[i][a]; }

  /// nabla(@x_i).
  Multivector lift(std::size_t i) const;
  /// nabla(X) for X in D_1(A,B) given by its values X(x_i) in B.
  Multivector lift(const std::vector<Polynomial>& components) const;
  /// X|_A as the values X(x_1..x_m).
  std::vector<Polynomial> restrict_to_base(const Multivector& x) const;

 private:
  Context ctx_;
  std::size_t m_;
  std::vector<std::vector<Polynomial>> gamma_;
};

/// U = sum_a (du_a - sum_i gamma_i^a dx_i) (x) @u_a.
VForm connection_form(const Connection& c);
/// i_X U computed from the form; equals X - nabla(X|_A).
Multivector contract_connection_form(const Connection& c, const Multivector& x);

/// R(@x_i, @x_j) = [nabla @x_i, nabla @x_j] - nabla(nabla(@x_i) o @x_j - nabla(@x_j) o @x_i).
Multivector curvature(const Connection& c, std::size_t i, std::size_t j);
bool is_flat(const Connection& c);

struct CurvatureCheck {
  std::size_t i = 0, j = 0;
  Multivector lhs;       ///< i_{@x_i} i_{@x_j} [[U,U]]
  Multivector swapped;   ///< i_{@x_j} i_{@x_i} [[U,U]]
  Multivector rhs;       ///< 2 R(@x_i, @x_j)
};
struct CurvatureReport {
  bool holds = true;          ///< lhs = rhs everywhere
  bool holds_swapped = true;  ///< swapped = rhs everywhere
  std::vector<CurvatureCheck> checks;
};
/// Compares i_X i_X' [[U,U]] with 2 R(X|_A, X'|_A) on all base coordinate
/// pairs. With first-slot insertion i_X i_X' K = K(X', X), so it is the
/// swapped order that matches 2R(X, X').
CurvatureReport curvature_vs_fn(const Connection& c);

/// Vertical Nijenhuis complex of U; UnverifiedError when the connection is not flat.
TruncatedComplex vertical_complex(const Connection& c, int cap, Window window, Exec exec = Exec::Serial,
                                  std::optional<unsigned> shuffle_seed = std::nullopt);

/// X_0 = X, X_(k+1) = i_(X_k) R. DomainError on grading mismatch or non-vertical input.
std::vector<Multivector> hierarchy(const Connection& c, const Multivector& x, const VForm& r, std::size_t n_max);

struct HierarchyReport {
  /// [[X,R]] = [[Y,R]] = 0 and [X,Y] = 0.
  bool corollary_hypotheses = false;
  /// All [X_a, Y_b] vanish for a <= m, b <= n.
  bool all_commute = false;
  /// [X_m, Y_n] minus the right side of the commutator display.
  Multivector defect;
};
HierarchyReport hierarchy_commutator_check(const Connection& c, const Multivector& x, const Multivector& y,
                                           const VForm& r, std::size_t m, std::size_t n);

}  // namespace blab
