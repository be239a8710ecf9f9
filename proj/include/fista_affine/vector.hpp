#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fista_affine/errors.hpp"

namespace fista_affine {

/// Dense real vector. Construction from raw data rejects NaN/Inf entries;
/// library functions treat instances as frozen values and return fresh ones.
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::size_t dim) : data_(dim, 0.0) {}

  Vector(std::initializer_list<double> init) : data_(init) { check_finite(); }

  static Vector from(std::vector<double> raw) {
    Vector v;
    v.data_ = std::move(raw);
    v.check_finite();
    return v;
  }

  static Vector unit(std::size_t dim, std::size_t axis) {
    Vector v(dim);
    v.data_.at(axis) = 1.0;
    return v;
  }

  std::size_t dim() const { return data_.size(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  const std::vector<double>& data() const { return data_; }

  bool all_finite() const {
    for (double x : data_)
      if (!std::isfinite(x)) return false;
    return true;
  }

 private:
  void check_finite() const {
    if (!all_finite()) throw std::invalid_argument("vector entries must be finite");
  }

  std::vector<double> data_;
};

inline void require_same_dim(const Vector& a, const Vector& b, const char* where) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim(), where);
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vector& a) { return dot(a, a); }

inline double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

inline Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "operator+");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "operator-");
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator*(double s, const Vector& a) {
  Vector r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = s * a[i];
  return r;
}

// r = s*x + y
inline Vector axpy(double s, const Vector& x, const Vector& y) {
  require_same_dim(x, y, "axpy");
  Vector r(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = s * x[i] + y[i];
  return r;
}

inline double distance(const Vector& a, const Vector& b) { return norm(a - b); }

inline bool bitwise_equal(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace fista_affine
