#include "bracketlab/linalg.hpp"

#include "bracketlab/errors.hpp"

namespace blab {

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("Matrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const { return Vector(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_); }

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw DomainError("Matrix::apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

Rref rref(Matrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
    Rational inv = 1 / m(row, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (m(row, k) != 0) m(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m(row, k) != 0) m(r, k) -= f * m(row, k);
    }
    out.pivot_cols.push_back(c);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

SolveResult solve_exact(const LinearSystem& sys) {
  const Matrix& a = sys.matrix;
  if (sys.rhs.size() != a.rows()) throw DomainError("solve_exact: rhs length does not match matrix rows");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = sys.rhs[r];
  }
  Rref red = rref(std::move(aug));
  std::size_t rank = red.pivot_cols.size();
  if (rank > 0 && red.pivot_cols.back() == a.cols()) return NoSolution{rank - 1};

  Solution sol;
  sol.rank = rank;
  sol.particular.assign(a.cols(), 0);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t k = 0; k < rank; ++k) {
    sol.particular[red.pivot_cols[k]] = red.m(k, a.cols());
    is_pivot[red.pivot_cols[k]] = true;
  }
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(a.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < rank; ++k) v[red.pivot_cols[k]] = -red.m(k, f);
    sol.null_basis.push_back(std::move(v));
  }
  return sol;
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return rref(m).pivot_cols.size();
}

std::vector<Vector> null_space(const Matrix& m) {
  LinearSystem sys{m, Vector(m.rows())};
  return std::get<Solution>(solve_exact(sys)).null_basis;
}

bool IncrementalEchelon::add_row(Vector row, Rational rhs) {
  if (row.size() != cols_) throw DomainError("IncrementalEchelon: row length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = row[pivots_[k]];
    if (f == 0) continue;
    const Vector& p = rows_[k];
    for (std::size_t c = 0; c < cols_; ++c)
      if (p[c] != 0) row[c] -= f * p[c];
    rhs -= f * rhs_[k];
  }
  std::size_t pc = 0;
  while (pc < cols_ && row[pc] == 0) ++pc;
  if (pc == cols_) {
    if (rhs != 0) {
      consistent_ = false;
      return false;
    }
    return true;
  }
  Rational inv = 1 / row[pc];
  for (auto& x : row)
    if (x != 0) x *= inv;
  rhs *= inv;
  // keep earlier pivot rows free of the new pivot column
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = rows_[k][pc];
    if (f == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row[c] != 0) rows_[k][c] -= f * row[c];
    rhs_[k] -= f * rhs;
  }
  rows_.push_back(std::move(row));
  rhs_.push_back(rhs);
  pivots_.push_back(pc);
  return true;
}

Vector IncrementalEchelon::particular() const {
  if (!consistent_) throw DomainError("IncrementalEchelon: system is inconsistent");
  Vector x(cols_);
  for (std::size_t k = 0; k < rows_.size(); ++k) x[pivots_[k]] = rhs_[k];
  return x;
}

}  // namespace blab
