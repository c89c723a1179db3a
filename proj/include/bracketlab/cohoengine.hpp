#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bracketlab/linalg.hpp"
#include "bracketlab/parallel.hpp"
#include "bracketlab/vform.hpp"

namespace blab {

/// de Rham complex Lambda^0 -> Lambda^1 -> ...
struct DeRham {
  Context ctx;
};
/// A -> D_1(A) -> D_2(A) -> ... with d = [[P, .]].
struct PoissonCochain {
  Multivector p;
};
/// ... -> Lambda^2 -> Lambda^1 -> A with d_P = [i_P, d].
struct PoissonChain {
  Multivector p;
};
/// D_1(B) -> D_1(Lambda^1) -> ... with d = [[N, .]] (Frolicher-Nijenhuis).
struct Nijenhuis {
  VForm n;
};
/// Lambda^0 -> Lambda^1 -> ... with d_N = L_N.
struct NijenhuisForms {
  VForm n;
};
/// Vertical part D_1^v(Lambda^j) of the Nijenhuis complex of a connection
/// form U; the last `fiber_count` variables are the fiber.
struct VerticalConnection {
  VForm u;
  std::size_t fiber_count = 0;
};

using ComplexKind = std::variant<DeRham, PoissonCochain, PoissonChain, Nijenhuis, NijenhuisForms, VerticalConnection>;

/// Degree window [lo, hi] of reported positions.
struct Window {
  int lo = 0, hi = 0;
};

/// dx_J (x) @_I (x) monomial, the unit coefficient basis element.
struct BasisElement {
  Mask form = 0, multi = 0;
  Monomial mono;
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct GradedBasis {
  std::string space;     ///< "D_2(A)", "Lambda^1", "D_1(Lambda^2)", "D_1^v(Lambda^1)"
  int position = 0;
  int form_degree = 0, multi_degree = 0;
  int poly_degree = 0;   ///< coefficient degree cap; negative means empty
  std::vector<BasisElement> elements;

  std::size_t dim() const { return elements.size(); }
  VForm element(const Context& ctx, std::size_t k) const;
  VForm combination(const Context& ctx, const Vector& v) const;
};

struct TruncatedComplex {
  ComplexKind kind;
  Context ctx;
  int cap = 0;
  Window window;
  int direction = 1;  ///< +1 cochain, -1 chain
  /// Spaces for positions first .. first + spaces.size() - 1: the window
  /// plus one neighbour on each side where the complex has one.
  int first = 0;
  std::vector<GradedBasis> spaces;
  /// out[s]: matrix of d from spaces[s] to the space at position + direction
  /// (zero rows when that space lies outside the built range).
  std::vector<Matrix> out;

  const GradedBasis& space_at(int position) const;
  /// Matrix of d leaving `position`, and the one arriving at it.
  const Matrix& outgoing(int position) const;
  std::optional<Matrix> incoming(int position) const;
};

/// Coefficient cap at each position: cap + direction * k * (g - 1), where g
/// is the top coefficient degree of the structure. The differential then maps
/// each truncated space into the next.
int truncation_cap(const TruncatedComplex& c, int position);

/// Verifies the structure (Poisson / integrable / flat), then builds the
/// matrices. Columns are computed independently; Exec::Parallel spreads them
/// over OpenMP threads. A shuffle seed permutes every basis.
TruncatedComplex build_complex(const ComplexKind& kind, int cap, Window window, Exec exec = Exec::Serial,
                               std::optional<unsigned> shuffle_seed = std::nullopt);

/// The differential itself, applied to one element of the space at `position`.
VForm apply_differential(const TruncatedComplex& c, const VForm& x);

/// Every product of consecutive matrices is the zero matrix.
bool compositions_vanish(const TruncatedComplex& c);

/// dim ker - rank of the incoming map. DomainError outside the window.
std::size_t betti(const TruncatedComplex& c, int position);

struct ProductCheck {
  std::size_t a = 0, b = 0;  ///< representative indices
  std::string op;            ///< "i" or "fn"
  bool cocycle = false;
};

struct CohomologyReport {
  int position = 0;
  std::size_t dimension = 0;
  std::string label;  ///< "Casimir", "canonical mod Hamiltonian", ...
  std::vector<VForm> representatives;
  /// Vertical connection complexes: products of representatives of this
  /// position with themselves, checked to be cocycles.
  std::vector<ProductCheck> products;
};
CohomologyReport interpret_H(const TruncatedComplex& c, int position);

}  // namespace blab
