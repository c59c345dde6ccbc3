#include "adann/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace adann {

std::vector<double> GridSpec::axis_nodes() const {
  std::vector<double> nodes(points_per_axis);
  if (boundary == Boundary::dirichlet) {
    for (int i = 0; i < points_per_axis; ++i)
      nodes[i] = static_cast<double>(i + 1) / (points_per_axis + 1);
  } else {
    for (int i = 0; i < points_per_axis; ++i)
      nodes[i] = static_cast<double>(i) / points_per_axis;
  }
  return nodes;
}

Matrix build_dirichlet_laplacian_1d(int n, double nu) {
  if (n < 1) throw std::invalid_argument("dirichlet laplacian requires N >= 1");
  if (nu < 0.0) throw std::invalid_argument("diffusion scale must be nonnegative");
  double scale = nu * static_cast<double>(n + 1) * static_cast<double>(n + 1);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = -2.0 * scale;
    if (i > 0) a(i, i - 1) = scale;
    if (i + 1 < n) a(i, i + 1) = scale;
  }
  return a;
}

Matrix build_periodic_laplacian_1d(int n, double nu) {
  if (n < 3) throw std::invalid_argument("periodic laplacian requires N >= 3");
  if (nu < 0.0) throw std::invalid_argument("diffusion scale must be nonnegative");
  double scale = nu * static_cast<double>(n) * static_cast<double>(n);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = -2.0 * scale;
    a(i, (i + 1) % n) += scale;
    a(i, (i + n - 1) % n) += scale;
  }
  return a;
}

Matrix build_periodic_laplacian_2d(int n, double nu) {
  if (n < 3) throw std::invalid_argument("periodic laplacian requires N >= 3");
  if (nu < 0.0) throw std::invalid_argument("diffusion scale must be nonnegative");
  Matrix one_d = build_periodic_laplacian_1d(n, 1.0);
  long d = static_cast<long>(n) * n;
  Matrix a = Matrix::Zero(d, d);
  // Row-major unknown (i, j) -> i*n + j; the first axis gets kron(L, I),
  // the second kron(I, L).
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double w = one_d(i, k);
      if (w == 0.0) continue;
      for (int j = 0; j < n; ++j) a(i * n + j, k * n + j) += nu * w;
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double w = one_d(j, k);
        if (w != 0.0) a(i * n + j, i * n + k) += nu * w;
      }
  }
  return a;
}

Matrix build_laplacian(const GridSpec& grid) {
  if (grid.dimension == 1) {
    return grid.boundary == Boundary::dirichlet
               ? build_dirichlet_laplacian_1d(grid.points_per_axis, grid.diffusion_scale)
               : build_periodic_laplacian_1d(grid.points_per_axis, grid.diffusion_scale);
  }
  if (grid.dimension == 2) {
    if (grid.boundary != Boundary::periodic)
      throw std::invalid_argument("2D grids support periodic boundaries only");
    return build_periodic_laplacian_2d(grid.points_per_axis, grid.diffusion_scale);
  }
  throw std::invalid_argument("grid dimension must be 1 or 2");
}

ShiftedSolver::ShiftedSolver(const Matrix& a, double shift) : shift_(shift) {
  if (a.rows() != a.cols()) throw std::invalid_argument("operator must be square");
  Matrix system = Matrix::Identity(a.rows(), a.cols()) - shift * a;
  lu_.compute(system);
  Vector diag = lu_.matrixLU().diagonal().cwiseAbs();
  double dmax = diag.maxCoeff();
  if (dmax == 0.0 || diag.minCoeff() < 1e-13 * dmax)
    throw std::runtime_error("shifted system is singular or near-singular");
}

} // namespace adann
