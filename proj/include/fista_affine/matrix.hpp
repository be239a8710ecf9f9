#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fista_affine/errors.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

/// Dense row-major matrix; the workhorse behind the dense map variant,
/// the SVD and the least-squares oracle.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw DimensionMismatch(m.cols_, rows[i].size(), "Matrix::from_rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t dim) {
    Matrix m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != dim) throw DimensionMismatch(dim, cols[j].dim(), "Matrix::from_columns");
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Vector apply(const Vector& x) const {
    if (x.dim() != cols_) throw DimensionMismatch(cols_, x.dim(), "Matrix::apply");
    Vector y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += at(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Vector apply_transpose(const Vector& y) const {
    if (y.dim() != rows_) throw DimensionMismatch(rows_, y.dim(), "Matrix::apply_transpose");
    Vector x(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += at(i, j) * y[i];
      x[j] = s;
    }
    return x;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  bool all_finite() const {
    for (double x : data_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch(a.cols(), b.rows(), "multiply");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

}  // namespace fista_affine
