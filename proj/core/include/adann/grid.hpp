#pragma once

#include <vector>

#include "adann/types.hpp"

namespace adann {

enum class Boundary { dirichlet, periodic };

/// Uniform grid on [0,1] (or [0,1]^2). Dirichlet grids place the N interior
/// nodes at i/(N+1), i = 1..N; periodic grids use i/N, i = 0..N-1.
struct GridSpec {
  int dimension = 1;       // 1 or 2
  int points_per_axis = 1; // N
  Boundary boundary = Boundary::dirichlet;
  double diffusion_scale = 1.0; // multiplies the Laplacian

  long unknowns() const {
    long n = points_per_axis;
    return dimension == 2 ? n * n : n;
  }

  /// Node coordinates along one axis.
  std::vector<double> axis_nodes() const;
};

/// nu * (N+1)^2 * tridiag(1, -2, 1), the second-difference Laplacian with
/// homogeneous Dirichlet boundary values.
Matrix build_dirichlet_laplacian_1d(int n, double nu);

/// nu * N^2 * circulant second-difference stencil (wraps at both ends).
Matrix build_periodic_laplacian_1d(int n, double nu);

/// Kronecker sum of the 1D periodic operator over both axes, with the
/// nu scaling applied once overall. Unknowns are ordered row-major over
/// (i, j) grid indices.
Matrix build_periodic_laplacian_2d(int n, double nu);

/// Dispatch on a GridSpec.
Matrix build_laplacian(const GridSpec& grid);

/// Factorization of (I - c*A), reused across solves. The factorization is
/// immutable after construction and safe to share between threads.
class ShiftedSolver {
 public:
  ShiftedSolver(const Matrix& a, double shift);

  template <class Derived>
  auto solve(const Eigen::MatrixBase<Derived>& rhs) const {
    return lu_.solve(rhs.derived()).eval();
  }

  double shift() const { return shift_; }
  long dimension() const { return lu_.rows(); }

 private:
  double shift_;
  Eigen::PartialPivLU<Matrix> lu_;
};

} // namespace adann
