#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fista_affine/linear_map.hpp"
#include "fista_affine/matrix.hpp"
#include "fista_affine/orthonormal.hpp"
#include "fista_affine/rng.hpp"
#include "fista_affine/spectral.hpp"
#include "fista_affine/svd.hpp"
#include "fista_affine/vector.hpp"
#include "test_support.hpp"

using namespace fista_affine;

TEST_CASE("vector arithmetic matches hand values", "[linalg]") {
  const Vector a{1.0, 2.0, 3.0};
  const Vector b{4.0, -1.0, 0.5};
  REQUIRE(dot(a, b) == 3.5);
  REQUIRE(norm_sq(a) == 14.0);
  REQUIRE(norm(Vector{3.0, 4.0}) == 5.0);
  const Vector s = axpy(2.0, a, b);  // 2a + b
  REQUIRE(s[0] == 6.0);
  REQUIRE(s[1] == 3.0);
  REQUIRE(s[2] == 6.5);
  REQUIRE(distance(Vector{1.0, 1.0}, Vector{4.0, 5.0}) == 5.0);
  REQUIRE(bitwise_equal(a, a));
  REQUIRE_FALSE(bitwise_equal(a, b));
}

TEST_CASE("vector construction rejects non-finite entries", "[linalg]") {
  REQUIRE_THROWS_AS(Vector::from({1.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(Vector::from({std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(dot(Vector{1.0}, Vector{1.0, 2.0}), DimensionMismatch);
}

TEST_CASE("matrix apply and transpose match hand values", "[linalg]") {
  const Matrix m = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
  const Vector x{1.0, -1.0};
  const Vector y = m.apply(x);
  REQUIRE(y[0] == -1.0);
  REQUIRE(y[1] == -1.0);
  REQUIRE(y[2] == -1.0);
  const Vector z = m.apply_transpose(Vector{1.0, 0.0, -1.0});
  REQUIRE(z[0] == -4.0);
  REQUIRE(z[1] == -4.0);

  const Matrix p = multiply(m.transpose(), m);
  REQUIRE(p.at(0, 0) == 35.0);
  REQUIRE(p.at(0, 1) == 44.0);
  REQUIRE(p.at(1, 0) == 44.0);
  REQUIRE(p.at(1, 1) == 56.0);

  const Matrix cols = Matrix::from_columns({Vector{1.0, 3.0, 5.0}, Vector{2.0, 4.0, 6.0}}, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) REQUIRE(cols.at(i, j) == m.at(i, j));
}

TEST_CASE("structured maps act as their dense materialization", "[linalg]") {
  SeededRng rng(11);
  const std::vector<LinearMap> maps = {
      LinearMap::dense(test_support::random_matrix(rng, 4, 6)),
      LinearMap::diagonal({2.0, -1.0, 0.0, 0.5}),
      LinearMap::right_shift(5),
      LinearMap::projector({Vector::unit(4, 1)}, 4),
      LinearMap::compose(LinearMap::right_shift(3), LinearMap::diagonal({1.0, 2.0, 3.0})),
      LinearMap::adjoint(LinearMap::right_shift(4)),
      LinearMap::identity_minus_scaled(0.25, LinearMap::diagonal({1.0, 2.0})),
      LinearMap::identity(3),
      LinearMap::zero(3, 2),
  };
  for (const LinearMap& map : maps) {
    const Matrix d = map.to_dense();
    const Vector x = rng.uniform_vector(map.in_dim(), -1.0, 1.0);
    const Vector y = rng.uniform_vector(map.out_dim(), -1.0, 1.0);
    REQUIRE(distance(map.apply(x), d.apply(x)) <= 1e-14 * (1.0 + norm(x)));
    REQUIRE(distance(map.apply_adjoint(y), d.apply_transpose(y)) <= 1e-14 * (1.0 + norm(y)));
    // exact adjoint pairing <Ax, y> = <x, A*y>
    const double lhs = dot(map.apply(x), y);
    const double rhs = dot(x, map.apply_adjoint(y));
    REQUIRE(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("right shift moves coordinates up and drops the last", "[linalg]") {
  const LinearMap r = LinearMap::right_shift(4);
  const Vector y = r.apply(Vector{1.0, 2.0, 3.0, 4.0});
  REQUIRE(y[0] == 0.0);
  REQUIRE(y[1] == 1.0);
  REQUIRE(y[2] == 2.0);
  REQUIRE(y[3] == 3.0);
  const Vector z = r.apply_adjoint(Vector{1.0, 2.0, 3.0, 4.0});
  REQUIRE(z[0] == 2.0);
  REQUIRE(z[1] == 3.0);
  REQUIRE(z[2] == 4.0);
  REQUIRE(z[3] == 0.0);
}

TEST_CASE("projector validates orthonormality and projects", "[linalg]") {
  REQUIRE_THROWS_AS(LinearMap::projector({Vector{1.0, 1.0}}, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(LinearMap::projector({Vector::unit(2, 0), Vector::unit(2, 0)}, 2),
                    std::invalid_argument);
  const double c = std::sqrt(0.5);
  const LinearMap p = LinearMap::projector({Vector{c, c}}, 2);
  const Vector y = p.apply(Vector{1.0, 0.0});
  REQUIRE(std::abs(y[0] - 0.5) <= 1e-15);
  REQUIRE(std::abs(y[1] - 0.5) <= 1e-15);
  // projector onto the empty family is the zero map
  const LinearMap p0 = LinearMap::projector({}, 3);
  REQUIRE(norm(p0.apply(Vector{1.0, 2.0, 3.0})) == 0.0);
}

TEST_CASE("seeded rng is reproducible and in range", "[linalg]") {
  SeededRng a(123456789), b(123456789);
  for (int i = 0; i < 100; ++i) REQUIRE(a.raw() == b.raw());
  for (int i = 0; i < 10; ++i) REQUIRE(a.gaussian() == b.gaussian());
  SeededRng c(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double w = c.uniform(-2.0, 3.0);
    REQUIRE(w >= -2.0);
    REQUIRE(w <= 3.0);
    REQUIRE(std::isfinite(c.gaussian()));
  }
}

TEST_CASE("orthonormalize produces an orthonormal spanning family", "[linalg]") {
  SeededRng rng(42);
  std::vector<Vector> input;
  for (int k = 0; k < 5; ++k) input.push_back(rng.uniform_vector(8, -1.0, 1.0));
  const std::vector<Vector> basis = orthonormalize(input);
  REQUIRE(basis.size() == 5);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      REQUIRE(std::abs(dot(basis[i], basis[j]) - expected) <= 1e-12);
    }
  // span preserved: every input reconstructs from the basis
  for (const Vector& v : input) {
    Vector r = v;
    for (const Vector& b : basis) r = axpy(-dot(v, b), b, r);
    REQUIRE(norm(r) <= 1e-10 * (1.0 + norm(v)));
  }
}

TEST_CASE("orthonormalize drops dependent inputs", "[linalg]") {
  const std::vector<Vector> basis =
      orthonormalize({Vector::unit(3, 0), Vector::unit(3, 0), Vector::unit(3, 1)});
  REQUIRE(basis.size() == 2);
  const std::vector<Vector> near =
      orthonormalize({Vector{1.0, 0.0, 0.0}, Vector{1.0, 1e-16, 0.0}});
  REQUIRE(near.size() == 1);
}

TEST_CASE("complete_basis extends to a full orthonormal basis", "[linalg]") {
  const double inv = 1.0 / std::sqrt(6.0);
  const Vector u{inv, inv, inv, inv, inv, inv};
  const std::vector<Vector> full = complete_basis({u}, 6);
  REQUIRE(full.size() == 6);
  REQUIRE(bitwise_equal(full[0], u));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      REQUIRE(std::abs(dot(full[i], full[j]) - expected) <= 1e-12);
    }

  // the missing direction is spread evenly over all coordinates; completion
  // must still recover it (up to sign)
  const std::vector<Vector> without(full.begin() + 1, full.end());
  const std::vector<Vector> recovered = complete_basis(without, 6);
  REQUIRE(recovered.size() == 6);
  REQUIRE(std::abs(std::abs(dot(recovered.back(), u)) - 1.0) <= 1e-10);

  const std::vector<Vector> scratch = complete_basis({}, 4);
  REQUIRE(scratch.size() == 4);
}

TEST_CASE("svd reproduces hand-computed factorizations", "[linalg]") {
  SECTION("diagonal") {
    const SvdResult s = jacobi_svd(Matrix::from_rows({{3.0, 0.0}, {0.0, 4.0}}));
    REQUIRE(std::abs(s.sigma[0] - 4.0) <= 1e-14);
    REQUIRE(std::abs(s.sigma[1] - 3.0) <= 1e-14);
  }
  SECTION("nilpotent") {
    const SvdResult s = jacobi_svd(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}));
    REQUIRE(std::abs(s.sigma[0] - 1.0) <= 1e-14);
    REQUIRE(s.sigma[1] <= 1e-14);
  }
  SECTION("wide input keeps full right basis") {
    const Matrix a = Matrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}});
    const SvdResult s = jacobi_svd(a);
    REQUIRE(s.sigma.size() == 3);
    REQUIRE(std::abs(s.sigma[0] - 2.0) <= 1e-14);
    REQUIRE(std::abs(s.sigma[1] - 1.0) <= 1e-14);
    REQUIRE(s.sigma[2] <= 1e-14);
    REQUIRE(s.v.rows() == 3);
    REQUIRE(s.v.cols() == 3);
    REQUIRE(std::abs(std::abs(s.v.at(2, 2)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("svd factors satisfy reconstruction and orthogonality", "[linalg]") {
  SeededRng rng(314);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{6, 6}, {9, 4}, {4, 9}}) {
    const Matrix a = test_support::random_matrix(rng, m, n, 2.0);
    const SvdResult s = jacobi_svd(a);
    const double smax = s.sigma.front();
    for (std::size_t j = 0; j + 1 < s.sigma.size(); ++j) REQUIRE(s.sigma[j] >= s.sigma[j + 1]);
    // V orthogonal
    const Matrix vtv = multiply(s.v.transpose(), s.v);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        REQUIRE(std::abs(vtv.at(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
    // reconstruction A = U diag(sigma) V^T
    Matrix usv(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0.0;
        for (std::size_t k = 0; k < s.sigma.size(); ++k)
          v += s.u.at(i, k) * s.sigma[k] * s.v.at(j, k);
        usv.at(i, j) = v;
      }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) REQUIRE(std::abs(usv.at(i, j) - a.at(i, j)) <= 1e-12 * smax);
    // U columns orthonormal on the nonzero block
    const double cutoff = rank_cutoff(s, m, n);
    for (std::size_t i = 0; i < s.sigma.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        if (s.sigma[i] <= cutoff || s.sigma[j] <= cutoff) continue;
        const double expected = (i == j) ? 1.0 : 0.0;
        REQUIRE(std::abs(dot(s.u.column(i), s.u.column(j)) - expected) <= 1e-12);
      }
  }
}

TEST_CASE("svd singular values match an independent eigensolver", "[linalg]") {
  SeededRng rng(2718);
  const Matrix a = test_support::random_matrix(rng, 7, 7, 1.5);
  const SvdResult s = jacobi_svd(a);
  const std::vector<double> ev = test_support::sym_eigenvalues(multiply(a.transpose(), a));
  const double scale = ev.back();
  for (std::size_t j = 0; j < 7; ++j) {
    const double expected = std::sqrt(std::max(0.0, ev[6 - j]));
    REQUIRE(std::abs(s.sigma[j] - expected) <= 1e-10 * std::sqrt(scale));
  }
}

TEST_CASE("minimum-norm least squares matches hand values", "[linalg]") {
  SECTION("rank deficient consistent direction") {
    const Matrix a = Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
    const auto ls = min_norm_least_squares(a, Vector{2.0, 0.0});
    REQUIRE(std::abs(ls.particular[0] - 0.5) <= 1e-12);
    REQUIRE(std::abs(ls.particular[1] - 0.5) <= 1e-12);
    REQUIRE(std::abs(ls.residual - std::sqrt(2.0)) <= 1e-12);
    REQUIRE(ls.kernel_basis.size() == 1);
    REQUIRE(norm(a.apply(ls.kernel_basis[0])) <= 1e-12);
  }
  SECTION("thin inconsistent") {
    const Matrix a = Matrix::from_rows({{1.0}, {1.0}});
    const auto ls = min_norm_least_squares(a, Vector{0.0, 2.0});
    REQUIRE(std::abs(ls.particular[0] - 1.0) <= 1e-12);
    REQUIRE(std::abs(ls.residual - std::sqrt(2.0)) <= 1e-12);
    REQUIRE(ls.kernel_basis.empty());
  }
  SECTION("wide consistent") {
    const Matrix a = Matrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}});
    const auto ls = min_norm_least_squares(a, Vector{1.0, 2.0});
    REQUIRE(std::abs(ls.particular[0] - 1.0) <= 1e-12);
    REQUIRE(std::abs(ls.particular[1] - 1.0) <= 1e-12);
    REQUIRE(std::abs(ls.particular[2]) <= 1e-12);
    REQUIRE(ls.residual <= 1e-12);
    REQUIRE(ls.kernel_basis.size() == 1);
  }
}

TEST_CASE("least squares agrees with the normal-equations oracle", "[linalg]") {
  SeededRng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = test_support::random_matrix(rng, 8, 5);
    const Vector b = rng.uniform_vector(8, -1.0, 1.0);
    const auto ls = min_norm_least_squares(a, b);
    REQUIRE(ls.kernel_basis.empty());
    const Vector expected = test_support::normal_equations_solve(a, b);
    REQUIRE(distance(ls.particular, expected) <= 1e-8 * (1.0 + norm(expected)));
  }
}

TEST_CASE("minimum-norm property holds on rank-deficient systems", "[linalg]") {
  SeededRng rng(5150);
  // build a 6x5 matrix of rank 3
  const Matrix left = test_support::random_matrix(rng, 6, 3);
  const Matrix right = test_support::random_matrix(rng, 3, 5);
  const Matrix a = multiply(left, right);
  const Vector b = rng.uniform_vector(6, -1.0, 1.0);
  const auto ls = min_norm_least_squares(a, b);
  REQUIRE(ls.kernel_basis.size() == 2);
  for (const Vector& k : ls.kernel_basis) {
    REQUIRE(norm(a.apply(k)) <= 1e-10);
    // particular solution is orthogonal to the kernel (minimum norm)
    REQUIRE(std::abs(dot(ls.particular, k)) <= 1e-10 * (1.0 + norm(ls.particular)));
  }
  // any kernel perturbation leaves the residual unchanged but grows the norm
  const Vector perturbed = axpy(0.7, ls.kernel_basis[0], ls.particular);
  REQUIRE(std::abs(distance(a.apply(perturbed), b) - ls.residual) <= 1e-10);
  REQUIRE(norm(perturbed) > norm(ls.particular));
}

TEST_CASE("smallest nonzero singular value skips the null block", "[linalg]") {
  const Matrix a = Matrix::from_rows({{3.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
  REQUIRE(std::abs(smallest_nonzero_singular(a) - 1.0) <= 1e-14);
  REQUIRE(smallest_nonzero_singular(Matrix(3, 3)) == 0.0);
}

TEST_CASE("subspace deviation is the sine of the largest principal angle", "[linalg]") {
  const double c = std::sqrt(0.5);
  SECTION("45 degrees") {
    const double dev = subspace_deviation({Vector{1.0, 0.0}}, {Vector{c, c}});
    REQUIRE(std::abs(dev - c) <= 1e-14);
  }
  SECTION("same span, different bases") {
    const double dev = subspace_deviation({Vector::unit(3, 0), Vector::unit(3, 1)},
                                          {Vector{c, c, 0.0}, Vector{c, -c, 0.0}});
    REQUIRE(dev <= 1e-14);
  }
  SECTION("dimension mismatch") {
    REQUIRE(subspace_deviation({Vector::unit(2, 0)}, {Vector::unit(2, 0), Vector::unit(2, 1)}) ==
            1.0);
  }
  SECTION("empty families coincide") {
    REQUIRE(subspace_deviation({}, {}) == 0.0);
  }
  SECTION("tiny angles survive with full precision") {
    const double theta = 1e-9;
    const Vector u{std::cos(theta), std::sin(theta)};
    const double dev = subspace_deviation({u}, {Vector{1.0, 0.0}});
    REQUIRE(std::abs(dev - theta) <= 2e-10);
  }
}

TEST_CASE("spectral norm bound covers the true norm with small headroom", "[linalg]") {
  SECTION("diagonal") {
    const SpectralBound b = spectral_norm_sq_upper(LinearMap::diagonal({3.0, 1.0}));
    REQUIRE_FALSE(b.zero_map);
    REQUIRE(b.value >= 9.0);
    REQUIRE(b.value <= 9.2);
  }
  SECTION("right shift has unit norm") {
    const SpectralBound b = spectral_norm_sq_upper(LinearMap::right_shift(10));
    REQUIRE(b.value >= 1.0);
    REQUIRE(b.value <= 1.02);
  }
  SECTION("zero map flagged") {
    REQUIRE(spectral_norm_sq_upper(LinearMap::zero(4, 4)).zero_map);
  }
  SECTION("random dense vs eigensolver") {
    SeededRng rng(808);
    const Matrix a = test_support::random_matrix(rng, 6, 6);
    const double top = test_support::sym_eigenvalues(multiply(a.transpose(), a)).back();
    const SpectralBound b = spectral_norm_sq_upper(LinearMap::dense(a));
    REQUIRE(b.value >= top * (1.0 - 1e-9));
    REQUIRE(b.value <= top * 1.02);
  }
}

TEST_CASE("minimum eigenvalue estimate separates definite from indefinite", "[linalg]") {
  REQUIRE(std::abs(min_eigenvalue_estimate(LinearMap::diagonal({3.0, 0.001})) - 0.001) <= 1e-6);
  REQUIRE(std::abs(min_eigenvalue_estimate(LinearMap::diagonal({3.0, -0.5})) + 0.5) <= 1e-6);
  REQUIRE(std::abs(min_eigenvalue_estimate(LinearMap::identity(5)) - 1.0) <= 1e-9);
  const double psd = min_eigenvalue_estimate(LinearMap::projector({Vector::unit(3, 0)}, 3));
  REQUIRE(psd >= -1e-12);
  REQUIRE(psd <= 1e-8);
}
