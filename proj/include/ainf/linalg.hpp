#pragma once

#include "ainf/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ainf {

template <class F>
using Vec = std::vector<F>;

template <class F>
bool is_zero_vec(const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [](const F& x) { return is_zero(x); });
}

template <class F>
Vec<F>& axpy(Vec<F>& y, const F& a, const Vec<F>& x) {
  assert(y.size() == x.size());
  if (is_zero(a)) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_zero(x[i])) y[i] += a * x[i];
  return y;
}

template <class F>
Vec<F> operator+(Vec<F> a, const Vec<F>& b) {
  return axpy(a, F(1), b);
}

template <class F>
Vec<F> operator-(Vec<F> a, const Vec<F>& b) {
  return axpy(a, F(-1), b);
}

template <class F>
Vec<F> scaled(const F& a, Vec<F> v) {
  for (auto& x : v) x *= a;
  return v;
}

template <class F>
Vec<F> unit_vector(std::size_t n, std::size_t i) {
  Vec<F> v(n, F(0));
  v.at(i) = F(1);
  return v;
}

// Dense row-major matrix.
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }
  static Matrix from_columns(std::size_t rows, const std::vector<Vec<F>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<F> column(std::size_t j) const {
    Vec<F> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Vec<F> row(std::size_t i) const { return Vec<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Vec<F> apply(const Vec<F>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    Vec<F> y(rows_, F(0));
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_zero(x[j])) continue;
      for (std::size_t i = 0; i < rows_; ++i)
        if (!is_zero((*this)(i, j))) y[i] += (*this)(i, j) * x[j];
    }
    return y;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
    Matrix s(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) s(i, j) = (*this)(row_idx[i], col_idx[j]);
    return s;
  }

  bool is_zero_matrix() const { return is_zero_vec(data_); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum size mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference size mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

// Reduced row echelon form. Columns are visited in `order`; the pivot of each column is the
// first remaining row with a nonzero entry. `transform` satisfies transform * input = reduced.
template <class F>
struct Echelon {
  Matrix<F> reduced;
  Matrix<F> transform;
  std::vector<std::pair<int, int>> pivots;  // (row, column) in discovery order
  std::vector<int> free_columns;            // in visiting order

  std::size_t rank() const { return pivots.size(); }
};

template <class F>
Echelon<F> echelon(const Matrix<F>& m, std::vector<int> order = {}) {
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), 0);
  }
  Echelon<F> e{m, Matrix<F>::identity(m.rows()), {}, {}};
  Matrix<F>& r = e.reduced;
  Matrix<F>& t = e.transform;
  std::size_t next_row = 0;
  for (int col : order) {
    std::size_t piv = next_row;
    while (piv < r.rows() && is_zero(r(piv, col))) ++piv;
    if (piv == r.rows()) {
      e.free_columns.push_back(col);
      continue;
    }
    if (piv != next_row) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(piv, j), r(next_row, j));
      for (std::size_t j = 0; j < t.cols(); ++j) std::swap(t(piv, j), t(next_row, j));
    }
    const F inv = F(1) / r(next_row, col);
    for (std::size_t j = 0; j < r.cols(); ++j) r(next_row, j) *= inv;
    for (std::size_t j = 0; j < t.cols(); ++j) t(next_row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == next_row || is_zero(r(i, col))) continue;
      const F f = r(i, col);
      for (std::size_t j = 0; j < r.cols(); ++j)
        if (!is_zero(r(next_row, j))) r(i, j) -= f * r(next_row, j);
      for (std::size_t j = 0; j < t.cols(); ++j)
        if (!is_zero(t(next_row, j))) t(i, j) -= f * t(next_row, j);
    }
    e.pivots.emplace_back(static_cast<int>(next_row), col);
    ++next_row;
  }
  return e;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return echelon(m).rank();
}

// Solves m x = b repeatedly for varying b. Free coordinates of particular solutions are zero.
template <class F>
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix<F>& m, const std::vector<int>& order = {})
      : cols_(m.cols()), e_(echelon(m, order)), kernel_(kernel_from(e_, cols_)) {}

  std::optional<Vec<F>> solve(const Vec<F>& b) const {
    if (b.size() != e_.transform.cols()) throw std::invalid_argument("right-hand side size mismatch");
    const Vec<F> tb = e_.transform.apply(b);
    for (std::size_t i = e_.rank(); i < tb.size(); ++i)
      if (!is_zero(tb[i])) return std::nullopt;
    Vec<F> x(cols_, F(0));
    for (auto [row, col] : e_.pivots) x[col] = tb[row];
    return x;
  }
  const std::vector<Vec<F>>& kernel() const { return kernel_; }
  std::size_t rank() const { return e_.rank(); }
  std::size_t cols() const { return cols_; }

 private:
  static std::vector<Vec<F>> kernel_from(const Echelon<F>& e, std::size_t cols) {
    std::vector<Vec<F>> out;
    for (int fc : e.free_columns) {
      Vec<F> v(cols, F(0));
      v[fc] = F(1);
      for (auto [row, col] : e.pivots) v[col] = -e.reduced(row, fc);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::size_t cols_;
  Echelon<F> e_;
  std::vector<Vec<F>> kernel_;
};

// Kernel basis: one vector per free column, with that column's coordinate equal to 1.
// Each vector is supported on its free column and on pivot columns visited before it, so an
// `order` of decreasing weight yields vectors whose lowest weight sits at the free column.
template <class F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m, const std::vector<int>& order = {}) {
  return LinearSolver<F>(m, order).kernel();
}

template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
  return LinearSolver<F>(m).solve(b);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Echelon<F> e = echelon(m);
  if (e.rank() != m.rows()) throw std::domain_error("matrix is singular");
  return e.transform;
}

// Reduced echelon basis of span(vectors) with leading entries chosen along `order`: each
// returned vector has a 1 at its leading coordinate and zeros at the other leading coordinates.
template <class F>
std::vector<Vec<F>> echelon_basis(std::size_t dim, const std::vector<Vec<F>>& vectors, const std::vector<int>& order = {}) {
  if (vectors.empty()) return {};
  Matrix<F> m(vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
  const Echelon<F> e = echelon(m, order);
  std::vector<Vec<F>> out;
  for (std::size_t i = 0; i < e.rank(); ++i) out.push_back(e.reduced.row(i));
  return out;
}

}  // namespace ainf
