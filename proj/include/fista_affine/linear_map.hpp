#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fista_affine/errors.hpp"
#include "fista_affine/matrix.hpp"
#include "fista_affine/vector.hpp"

namespace fista_affine {

namespace detail {

struct MapImpl {
  virtual ~MapImpl() = default;
  virtual Vector apply(const Vector& x) const = 0;
  virtual Vector apply_adjoint(const Vector& y) const = 0;
  virtual std::size_t in_dim() const = 0;
  virtual std::size_t out_dim() const = 0;
};

using MapPtr = std::shared_ptr<const MapImpl>;

struct DenseImpl final : MapImpl {
  explicit DenseImpl(Matrix mat) : m(std::move(mat)) {
    if (!m.all_finite()) throw std::invalid_argument("dense map entries must be finite");
  }
  Vector apply(const Vector& x) const override { return m.apply(x); }
  Vector apply_adjoint(const Vector& y) const override { return m.apply_transpose(y); }
  std::size_t in_dim() const override { return m.cols(); }
  std::size_t out_dim() const override { return m.rows(); }
  Matrix m;
};

struct DiagonalImpl final : MapImpl {
  explicit DiagonalImpl(std::vector<double> weights) : w(std::move(weights)) {
    for (double x : w)
      if (!std::isfinite(x)) throw std::invalid_argument("diagonal weights must be finite");
  }
  Vector apply(const Vector& x) const override {
    Vector y(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) y[i] = w[i] * x[i];
    return y;
  }
  Vector apply_adjoint(const Vector& y) const override { return apply(y); }
  std::size_t in_dim() const override { return w.size(); }
  std::size_t out_dim() const override { return w.size(); }
  std::vector<double> w;
};

// e_i -> e_{i+1}; the last basis vector is annihilated, so ker(Id - R) = {0}.
struct ShiftImpl final : MapImpl {
  explicit ShiftImpl(std::size_t dim) : n(dim) {}
  Vector apply(const Vector& x) const override {
    Vector y(n);
    for (std::size_t i = 1; i < n; ++i) y[i] = x[i - 1];
    return y;
  }
  Vector apply_adjoint(const Vector& y) const override {
    Vector x(n);
    for (std::size_t i = 1; i < n; ++i) x[i - 1] = y[i];
    return x;
  }
  std::size_t in_dim() const override { return n; }
  std::size_t out_dim() const override { return n; }
  std::size_t n;
};

struct ProjectorImpl final : MapImpl {
  ProjectorImpl(std::vector<Vector> basis, std::size_t dim) : b(std::move(basis)), n(dim) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i].dim() != n) throw DimensionMismatch(n, b[i].dim(), "LinearMap::projector");
      for (std::size_t j = 0; j <= i; ++j) {
        const double g = dot(b[i], b[j]);
        const double expected = (i == j) ? 1.0 : 0.0;
        if (std::abs(g - expected) > 1e-8)
          throw std::invalid_argument("projector basis must be orthonormal");
      }
    }
  }
  Vector apply(const Vector& x) const override {
    Vector y(n);
    for (const Vector& v : b) {
      const double c = dot(x, v);
      for (std::size_t i = 0; i < n; ++i) y[i] += c * v[i];
    }
    return y;
  }
  Vector apply_adjoint(const Vector& y) const override { return apply(y); }
  std::size_t in_dim() const override { return n; }
  std::size_t out_dim() const override { return n; }
  std::vector<Vector> b;
  std::size_t n;
};

struct ComposeImpl final : MapImpl {
  ComposeImpl(MapPtr o, MapPtr i) : outer(std::move(o)), inner(std::move(i)) {}
  Vector apply(const Vector& x) const override { return outer->apply(inner->apply(x)); }
  Vector apply_adjoint(const Vector& y) const override {
    return inner->apply_adjoint(outer->apply_adjoint(y));
  }
  std::size_t in_dim() const override { return inner->in_dim(); }
  std::size_t out_dim() const override { return outer->out_dim(); }
  MapPtr outer, inner;
};

struct AdjointImpl final : MapImpl {
  explicit AdjointImpl(MapPtr i) : inner(std::move(i)) {}
  Vector apply(const Vector& x) const override { return inner->apply_adjoint(x); }
  Vector apply_adjoint(const Vector& y) const override { return inner->apply(y); }
  std::size_t in_dim() const override { return inner->out_dim(); }
  std::size_t out_dim() const override { return inner->in_dim(); }
  MapPtr inner;
};

// x -> x - alpha * inner(x)
struct ShrinkImpl final : MapImpl {
  ShrinkImpl(double a, MapPtr i) : alpha(a), inner(std::move(i)) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("scale must be finite");
  }
  Vector apply(const Vector& x) const override {
    Vector ax = inner->apply(x);
    Vector y(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) y[i] = x[i] - alpha * ax[i];
    return y;
  }
  Vector apply_adjoint(const Vector& y) const override {
    Vector ay = inner->apply_adjoint(y);
    Vector x(y.dim());
    for (std::size_t i = 0; i < y.dim(); ++i) x[i] = y[i] - alpha * ay[i];
    return x;
  }
  std::size_t in_dim() const override { return inner->in_dim(); }
  std::size_t out_dim() const override { return inner->in_dim(); }
  double alpha;
  MapPtr inner;
};

}  // namespace detail

/// Immutable linear operator with exact adjoint application.
///
/// Variants: dense matrix, diagonal, right shift, subspace projector,
/// composition, adjoint wrapper, and identity-minus-scaled (x - alpha*inner(x)).
/// Structured variants apply without materializing a matrix; to_dense()
/// materializes column by column when a flat view is needed.
class LinearMap {
 public:
  Vector apply(const Vector& x) const {
    if (x.dim() != impl_->in_dim())
      throw DimensionMismatch(impl_->in_dim(), x.dim(), "LinearMap::apply");
    return impl_->apply(x);
  }

  Vector apply_adjoint(const Vector& y) const {
    if (y.dim() != impl_->out_dim())
      throw DimensionMismatch(impl_->out_dim(), y.dim(), "LinearMap::apply_adjoint");
    return impl_->apply_adjoint(y);
  }

  std::size_t in_dim() const { return impl_->in_dim(); }
  std::size_t out_dim() const { return impl_->out_dim(); }

  Matrix to_dense() const {
    Matrix m(out_dim(), in_dim());
    for (std::size_t j = 0; j < in_dim(); ++j) {
      Vector col = impl_->apply(Vector::unit(in_dim(), j));
      for (std::size_t i = 0; i < out_dim(); ++i) m.at(i, j) = col[i];
    }
    return m;
  }

  static LinearMap dense(Matrix m) {
    return LinearMap(std::make_shared<detail::DenseImpl>(std::move(m)));
  }

  static LinearMap diagonal(std::vector<double> weights) {
    return LinearMap(std::make_shared<detail::DiagonalImpl>(std::move(weights)));
  }

  static LinearMap right_shift(std::size_t dim) {
    return LinearMap(std::make_shared<detail::ShiftImpl>(dim));
  }

  /// Orthogonal projector onto the span of an orthonormal family (may be empty).
  static LinearMap projector(std::vector<Vector> orthonormal_basis, std::size_t dim) {
    return LinearMap(std::make_shared<detail::ProjectorImpl>(std::move(orthonormal_basis), dim));
  }

  /// x -> outer(inner(x))
  static LinearMap compose(const LinearMap& outer, const LinearMap& inner) {
    if (outer.in_dim() != inner.out_dim())
      throw DimensionMismatch(outer.in_dim(), inner.out_dim(), "LinearMap::compose");
    return LinearMap(std::make_shared<detail::ComposeImpl>(outer.impl_, inner.impl_));
  }

  static LinearMap adjoint(const LinearMap& inner) {
    return LinearMap(std::make_shared<detail::AdjointImpl>(inner.impl_));
  }

  /// x -> x - alpha * inner(x); inner must be square.
  static LinearMap identity_minus_scaled(double alpha, const LinearMap& inner) {
    if (inner.in_dim() != inner.out_dim())
      throw DimensionMismatch(inner.in_dim(), inner.out_dim(), "LinearMap::identity_minus_scaled");
    return LinearMap(std::make_shared<detail::ShrinkImpl>(alpha, inner.impl_));
  }

  static LinearMap identity(std::size_t dim) { return diagonal(std::vector<double>(dim, 1.0)); }

  static LinearMap zero(std::size_t in_dim, std::size_t out_dim) {
    return dense(Matrix(out_dim, in_dim));
  }

 private:
  explicit LinearMap(detail::MapPtr impl) : impl_(std::move(impl)) {}

  detail::MapPtr impl_;
};

}  // namespace fista_affine
