#include "adann/problems.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "adann/rng.hpp"

namespace adann {

namespace {
constexpr double kPi = std::numbers::pi;
}

ProblemSpec rd1d_problem() {
  ProblemSpec p;
  p.name = "rd1d";
  p.grid = {1, 35, Boundary::dirichlet, 0.01};
  p.f = Nonlinearity::reaction_diffusion();
  p.terminal_time = 1.0;
  return p;
}

ProblemSpec sg1d_problem() {
  ProblemSpec p;
  p.name = "sg1d";
  p.grid = {1, 30, Boundary::periodic, 0.01};
  p.f = Nonlinearity::sine();
  p.terminal_time = 2.0;
  return p;
}

ProblemSpec heat2d_problem() {
  ProblemSpec p;
  p.name = "heat2d";
  p.grid = {2, 40, Boundary::periodic, 0.01};
  p.f = Nonlinearity::sqrt_one_plus_sq();
  p.terminal_time = 2.0;
  return p;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "rd1d") return rd1d_problem();
  if (name == "sg1d") return sg1d_problem();
  if (name == "heat2d") return heat2d_problem();
  throw std::invalid_argument("unknown problem preset: " + name);
}

std::string InitialLaw::name() const {
  switch (kind) {
    case Kind::sine_decay:
      return "sine_decay";
    case Kind::fourier_decay:
      return "fourier_decay";
    case Kind::grf2d:
      return "grf2d";
  }
  return "sine_decay";
}

InitialLaw InitialLaw::preset_for(const ProblemSpec& problem) {
  InitialLaw law;
  if (problem.name == "rd1d") {
    law.kind = Kind::sine_decay;
    law.modes = 32;
  } else if (problem.name == "sg1d") {
    law.kind = Kind::fourier_decay;
    law.modes = 16;
  } else if (problem.name == "heat2d") {
    law.kind = Kind::grf2d;
  } else {
    throw std::invalid_argument("no initial law preset for problem " + problem.name);
  }
  return law;
}

Vector sine_decay_from_coefficients(const Vector& z, const std::vector<double>& nodes) {
  Vector out = Vector::Zero(static_cast<long>(nodes.size()));
  for (long n = 1; n <= z.size(); ++n) {
    double weight = 5.0 * z(n - 1) / static_cast<double>(n * n);
    if (weight == 0.0) continue;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out(static_cast<long>(i)) += weight * std::sin(kPi * n * nodes[i]);
  }
  return out;
}

Vector fourier_decay_from_coefficients(double a0, const Vector& a, const Vector& b,
                                       const std::vector<double>& nodes) {
  if (a.size() != b.size()) throw std::invalid_argument("coefficient lengths differ");
  Vector out = Vector::Constant(static_cast<long>(nodes.size()), 2.0 * a0);
  for (long n = 1; n <= a.size(); ++n) {
    double ws = 2.0 * a(n - 1) / static_cast<double>(n * n);
    double wc = 2.0 * b(n - 1) / static_cast<double>(n * n);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double phase = 2.0 * kPi * n * nodes[i];
      out(static_cast<long>(i)) += ws * std::sin(phase) + wc * std::cos(phase);
    }
  }
  return out;
}

ReferenceSolver ReferenceSolver::preset_for(const ProblemSpec& problem) {
  if (problem.name == "rd1d") return {8, 300};   // 287 fine points
  if (problem.name == "sg1d") return {14, 420};  // 420 fine points
  if (problem.name == "heat2d") return {2, 200}; // 80x80 fine grid
  throw std::invalid_argument("no reference preset for problem " + problem.name);
}

GridSpec ReferenceSolver::fine_grid(const GridSpec& coarse) const {
  GridSpec fine = coarse;
  if (coarse.boundary == Boundary::dirichlet)
    fine.points_per_axis = fine_factor * (coarse.points_per_axis + 1) - 1;
  else
    fine.points_per_axis = fine_factor * coarse.points_per_axis;
  return fine;
}

std::vector<int> ReferenceSolver::restriction_indices(const GridSpec& coarse) const {
  std::vector<int> idx;
  int n = coarse.points_per_axis;
  if (coarse.dimension == 1) {
    idx.reserve(n);
    if (coarse.boundary == Boundary::dirichlet) {
      // coarse node i/(n+1) is fine node (k*i)/(k*(n+1)), fine array is 0-based
      for (int i = 1; i <= n; ++i) idx.push_back(fine_factor * i - 1);
    } else {
      for (int i = 0; i < n; ++i) idx.push_back(fine_factor * i);
    }
    return idx;
  }
  if (coarse.boundary != Boundary::periodic)
    throw std::invalid_argument("2D restriction supports periodic grids only");
  int fine_n = fine_factor * n;
  idx.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      idx.push_back((fine_factor * i) * fine_n + fine_factor * j);
  return idx;
}

InitialSampler::InitialSampler(const ProblemSpec& problem,
                               const ReferenceSolver& reference, InitialLaw law)
    : law_(law) {
  GridSpec fine = reference.fine_grid(problem.grid);
  fine_dim_ = fine.unknowns();
  fine_axis_points_ = fine.points_per_axis;
  if (law_.kind == InitialLaw::Kind::grf2d) {
    if (fine.dimension != 2 || fine.boundary != Boundary::periodic)
      throw std::invalid_argument("grf2d law requires a periodic 2D grid");
    Matrix laplacian = build_periodic_laplacian_2d(fine.points_per_axis, 1.0);
    // 2 (2I - L)^{-1} = (I - L/2)^{-1}
    grf_solver_ = std::make_shared<ShiftedSolver>(0.5 * laplacian, 1.0);
    grf_noise_sd_ = static_cast<double>(fine.points_per_axis);
  } else {
    if (fine.dimension != 1)
      throw std::invalid_argument("trigonometric laws require a 1D grid");
    fine_nodes_ = fine.axis_nodes();
  }
}

Vector InitialSampler::sample(std::uint64_t sample_seed) const {
  std::mt19937_64 gen = make_generator(sample_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (law_.kind) {
    case InitialLaw::Kind::sine_decay: {
      Vector z(law_.modes);
      for (long n = 0; n < z.size(); ++n) z(n) = normal(gen);
      return sine_decay_from_coefficients(z, fine_nodes_);
    }
    case InitialLaw::Kind::fourier_decay: {
      double a0 = normal(gen);
      Vector a(law_.modes), b(law_.modes);
      if (law_.shared_fourier_coeffs) {
        for (long n = 0; n < a.size(); ++n) {
          a(n) = normal(gen);
          b(n) = a(n);
        }
      } else {
        for (long n = 0; n < a.size(); ++n) {
          a(n) = normal(gen);
          b(n) = normal(gen);
        }
      }
      return fourier_decay_from_coefficients(a0, a, b, fine_nodes_);
    }
    case InitialLaw::Kind::grf2d: {
      Vector noise(fine_dim_);
      for (long i = 0; i < fine_dim_; ++i) noise(i) = grf_noise_sd_ * normal(gen);
      // 2 (2I - L)^{-1} x = (I - L/2)^{-1} x
      return grf_solver_->solve(noise);
    }
  }
  throw std::logic_error("unreachable");
}

ReferenceIntegrator::ReferenceIntegrator(const ProblemSpec& problem,
                                         const ReferenceSolver& reference)
    : problem_(problem), reference_(reference) {
  GridSpec fine = reference.fine_grid(problem.grid);
  system_.linear = build_laplacian(fine);
  system_.f = problem.f;
  restriction_ = reference.restriction_indices(problem.grid);
}

Matrix ReferenceIntegrator::integrate_fine(const Matrix& fine_initial) const {
  if (fine_initial.rows() != system_.linear.rows())
    throw std::invalid_argument("initial samples do not match the fine grid");
  return rollout({0.5, 0.5}, system_, problem_.terminal_time, reference_.fine_steps,
                 fine_initial);
}

Matrix ReferenceIntegrator::restrict_columns(const Matrix& fine) const {
  return restrict_rows(fine, restriction_);
}

Matrix ReferenceIntegrator::solve(const Matrix& fine_initial) const {
  return restrict_columns(integrate_fine(fine_initial));
}

Vector ReferenceIntegrator::solve(const Vector& fine_initial) const {
  return solve(Matrix(fine_initial)).col(0);
}

Matrix restrict_rows(const Matrix& fine_columns, const std::vector<int>& indices) {
  Matrix out(static_cast<long>(indices.size()), fine_columns.cols());
  for (std::size_t i = 0; i < indices.size(); ++i)
    out.row(static_cast<long>(i)) = fine_columns.row(indices[i]);
  return out;
}

double seminorm(const Vector& values) {
  if (values.size() == 0) throw std::invalid_argument("seminorm of empty vector");
  return std::sqrt(values.squaredNorm() / static_cast<double>(values.size()));
}

Vector column_seminorms(const Matrix& values) {
  if (values.rows() == 0) throw std::invalid_argument("seminorm of empty columns");
  return (values.colwise().squaredNorm() / static_cast<double>(values.rows()))
      .cwiseSqrt()
      .transpose();
}

} // namespace adann
