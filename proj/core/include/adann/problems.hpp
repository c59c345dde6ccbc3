#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "adann/grid.hpp"
#include "adann/lirk.hpp"
#include "adann/nonlinearity.hpp"
#include "adann/types.hpp"

namespace adann {

/// One benchmark problem: grid (with diffusion scale), reaction term and
/// terminal time. The induced solution operator maps initial values on the
/// grid to terminal values on the same grid.
struct ProblemSpec {
  std::string name;
  GridSpec grid;
  Nonlinearity f;
  double terminal_time = 1.0;
};

/// 1D reaction-diffusion, Dirichlet, N=35, T=1, nu=1/100.
ProblemSpec rd1d_problem();
/// 1D Sine-Gordon type, periodic, N=30, T=2, nu=1/100.
ProblemSpec sg1d_problem();
/// 2D semilinear heat, periodic 40x40, T=2, nu=1/100.
ProblemSpec heat2d_problem();

ProblemSpec problem_by_name(const std::string& name);

/// Random initial-condition laws. sine_decay and fourier_decay evaluate a
/// random trigonometric expansion at given nodes; grf2d draws a discretized
/// Gaussian random field on a fine periodic 2D grid.
struct InitialLaw {
  enum class Kind { sine_decay, fourier_decay, grf2d };
  Kind kind = Kind::sine_decay;
  int modes = 32;                    // sine: 32 (16 selects the narrow reading)
  bool shared_fourier_coeffs = false; // fourier: one Z_n for both sin and cos

  std::string name() const;
  static InitialLaw preset_for(const ProblemSpec& problem);
};

/// sum_{n=1..modes} 5 z_n sin(pi n x) / n^2 at the given nodes.
Vector sine_decay_from_coefficients(const Vector& z, const std::vector<double>& nodes);

/// 2 a0 + sum_{n=1..modes} (2 a_n sin(2 pi n x) + 2 b_n cos(2 pi n x)) / n^2.
Vector fourier_decay_from_coefficients(double a0, const Vector& a, const Vector& b,
                                       const std::vector<double>& nodes);

/// Fine-grid/step configuration of the high-accuracy reference algorithm
/// (always the p = (1/2, 1/2) scheme).
struct ReferenceSolver {
  int fine_factor = 1; // fine nodes per coarse node
  int fine_steps = 1;

  static ReferenceSolver preset_for(const ProblemSpec& problem);

  /// Fine grid containing every coarse node exactly.
  GridSpec fine_grid(const GridSpec& coarse) const;
  /// Positions of the coarse nodes inside the fine unknown vector.
  std::vector<int> restriction_indices(const GridSpec& coarse) const;
};

/// Draws initial conditions on the reference fine grid. A sampler instance
/// is immutable; samples are a pure function of the per-sample seed.
class InitialSampler {
 public:
  InitialSampler(const ProblemSpec& problem, const ReferenceSolver& reference,
                 InitialLaw law);

  Vector sample(std::uint64_t sample_seed) const;
  long fine_dimension() const { return fine_dim_; }
  const InitialLaw& law() const { return law_; }

 private:
  InitialLaw law_;
  long fine_dim_ = 0;
  int fine_axis_points_ = 0;
  std::vector<double> fine_nodes_; // 1D laws
  std::shared_ptr<const ShiftedSolver> grf_solver_; // (2I - Laplacian)^{-1}
  double grf_noise_sd_ = 0.0;
};

/// Precomputed fine-grid integrator plus restriction. solve() maps fine
/// initial samples (as columns) to coarse terminal samples.
class ReferenceIntegrator {
 public:
  ReferenceIntegrator(const ProblemSpec& problem, const ReferenceSolver& reference);

  Matrix integrate_fine(const Matrix& fine_initial) const;
  Matrix solve(const Matrix& fine_initial) const;
  Vector solve(const Vector& fine_initial) const;

  /// Restrict fine-grid samples (columns) to the coarse grid.
  Matrix restrict_columns(const Matrix& fine) const;

  long fine_dimension() const { return system_.linear.rows(); }
  long coarse_dimension() const { return static_cast<long>(restriction_.size()); }
  const std::vector<int>& restriction() const { return restriction_; }

 private:
  ProblemSpec problem_;
  ReferenceSolver reference_;
  OdeSystem system_;
  std::vector<int> restriction_;
};

/// Keep only the given rows of a sample-column matrix.
Matrix restrict_rows(const Matrix& fine_columns, const std::vector<int>& indices);

/// Root-mean-square of the values at the evaluation nodes.
double seminorm(const Vector& values);

/// seminorm of every column.
Vector column_seminorms(const Matrix& values);

} // namespace adann
