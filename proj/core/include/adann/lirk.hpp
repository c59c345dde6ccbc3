#pragma once

#include <array>

#include "adann/grid.hpp"
#include "adann/nonlinearity.hpp"
#include "adann/types.hpp"

namespace adann {

/// The two free parameters of the second-order LIRK family.
struct LirkParams {
  double p1 = 0.5;
  double p2 = 0.5;
};

/// General linearly implicit Runge-Kutta data: stage count s, strictly
/// lower-triangular nonlinear weights alpha, lower-triangular (incl.
/// diagonal) linear weights beta, and integration weights b. Only the
/// entries alpha(i,j) with j < i and beta(i,j) with j <= i are read.
struct ButcherTableau {
  int stages = 0;
  Matrix alpha;
  Matrix beta;
  Vector b;

  /// C_i = sum_{j<=i} beta(i,j)
  Vector linear_row_sums() const;
  /// c_i = sum_{j<i} alpha(i,j)
  Vector nonlinear_row_sums() const;
};

/// Semilinear system du/dt = A u + f(u) with f applied componentwise.
/// The linear part carries any diffusion scaling already.
struct OdeSystem {
  Matrix linear;
  Nonlinearity f;
};

/// Two-stage order-2 tableau for parameters p: alpha(2,1) = p1,
/// beta(1,1) = beta(2,2) = p2, beta(2,1) = 2 p1 (1/2 - p2),
/// b = (1 - 1/(2 p1), 1/(2 p1)). Rejects nonpositive parameters.
ButcherTableau order2_tableau(LirkParams p);

struct OrderCheck {
  bool order2 = false;
  // residuals of: sum b_i - 1, sum b_i C_i - 1/2, sum b_i c_i - 1/2
  std::array<double, 3> residuals{};
};

OrderCheck check_order2_conditions(const ButcherTableau& tableau);

/// One step of the general LIRK increment. Builds one shifted solver per
/// distinct diagonal entry beta(i,i). A zero step returns the state
/// unchanged.
Vector general_lirk_step(const OdeSystem& sys, const ButcherTableau& tableau,
                         double h, const Vector& state);

/// Reusable two-stage stepper: factorizes (I - h p2 A) once and applies the
/// step to single states or to batches stored as matrix columns.
class Lirk2Stepper {
 public:
  Lirk2Stepper(LirkParams p, const OdeSystem& sys, double h);

  Matrix step(const Matrix& states) const;
  Vector step(const Vector& state) const;

  double step_size() const { return h_; }

 private:
  LirkParams p_;
  const OdeSystem* sys_;
  double h_;
  ShiftedSolver solver_;
};

/// One two-stage LIRK step (Crank-Nicolson explicit midpoint at
/// p = (1/2, 1/2)).
Vector lirk_step2(LirkParams p, const OdeSystem& sys, double h, const Vector& state);

/// Closed-form Crank-Nicolson explicit midpoint step.
Vector crank_nicolson_midpoint_step(const OdeSystem& sys, double h, const Vector& state);

/// M-fold composition of the two-stage step with h = T/M. The batched
/// overload advances every column independently.
Matrix rollout(LirkParams p, const OdeSystem& sys, double terminal_time, int steps,
               const Matrix& states);
Vector rollout(LirkParams p, const OdeSystem& sys, double terminal_time, int steps,
               const Vector& state);

} // namespace adann
