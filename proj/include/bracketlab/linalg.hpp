#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "bracketlab/polynomial.hpp"

namespace blab {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  bool is_zero() const;
  Vector apply(const Vector& v) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct LinearSystem {
  Matrix matrix;
  Vector rhs;
};

struct Solution {
  Vector particular;  ///< free coordinates set to zero
  std::vector<Vector> null_basis;
  std::size_t rank = 0;
};

struct NoSolution {
  std::size_t rank = 0;
};

using SolveResult = std::variant<Solution, NoSolution>;

/// Reduced row echelon form. Pivot = first nonzero entry scanning columns
/// left to right, rows top to bottom.
struct Rref {
  Matrix m;
  std::vector<std::size_t> pivot_cols;
};
Rref rref(Matrix m);

/// Exact solve of matrix * v = rhs. DomainError on inconsistent shapes.
SolveResult solve_exact(const LinearSystem& sys);
std::size_t rank(const Matrix& m);
/// Null space basis, one vector per free column (that column set to 1).
std::vector<Vector> null_space(const Matrix& m);

/// Row-at-a-time elimination; reports the first row that makes the system
/// inconsistent. Used where equations arrive in batches.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

  /// Returns false iff the row is inconsistent with the rows already added.
  bool add_row(Vector row, Rational rhs);
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool consistent() const { return consistent_; }
  /// Solution with free coordinates zero; requires consistent().
  Vector particular() const;
  std::size_t nullity() const { return cols_ - rows_.size(); }

 private:
  std::size_t cols_;
  std::vector<Vector> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> pivots_;
  bool consistent_ = true;
};

}  // namespace blab
