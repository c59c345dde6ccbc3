#include "adann/lirk.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace adann {

Vector ButcherTableau::linear_row_sums() const {
  Vector sums = Vector::Zero(stages);
  for (int i = 0; i < stages; ++i)
    for (int j = 0; j <= i; ++j) sums(i) += beta(i, j);
  return sums;
}

Vector ButcherTableau::nonlinear_row_sums() const {
  Vector sums = Vector::Zero(stages);
  for (int i = 0; i < stages; ++i)
    for (int j = 0; j < i; ++j) sums(i) += alpha(i, j);
  return sums;
}

ButcherTableau order2_tableau(LirkParams p) {
  if (!(p.p1 > 0.0) || !(p.p2 > 0.0))
    throw std::invalid_argument("LIRK parameters must be positive");
  ButcherTableau t;
  t.stages = 2;
  t.alpha = Matrix::Zero(2, 2);
  t.beta = Matrix::Zero(2, 2);
  t.b = Vector::Zero(2);
  t.alpha(1, 0) = p.p1;
  t.beta(0, 0) = p.p2;
  t.beta(1, 1) = p.p2;
  t.beta(1, 0) = 2.0 * p.p1 * (0.5 - p.p2);
  t.b(0) = 1.0 - 1.0 / (2.0 * p.p1);
  t.b(1) = 1.0 / (2.0 * p.p1);
  return t;
}

OrderCheck check_order2_conditions(const ButcherTableau& tableau) {
  OrderCheck check;
  Vector big_c = tableau.linear_row_sums();
  Vector small_c = tableau.nonlinear_row_sums();
  check.residuals[0] = tableau.b.sum() - 1.0;
  check.residuals[1] = tableau.b.dot(big_c) - 0.5;
  check.residuals[2] = tableau.b.dot(small_c) - 0.5;
  check.order2 = true;
  for (double r : check.residuals)
    if (!(std::abs(r) <= 1e-12)) check.order2 = false;
  return check;
}

Vector general_lirk_step(const OdeSystem& sys, const ButcherTableau& tableau,
                         double h, const Vector& state) {
  if (h < 0.0) throw std::invalid_argument("step size must be nonnegative");
  if (h == 0.0) return state;
  const Matrix& a = sys.linear;
  int s = tableau.stages;

  std::map<double, ShiftedSolver> solvers;
  for (int i = 0; i < s; ++i) {
    double c = h * tableau.beta(i, i);
    if (!solvers.count(c)) solvers.emplace(c, ShiftedSolver(a, c));
  }

  std::vector<Vector> stages(s);
  for (int i = 0; i < s; ++i) {
    Vector linear_arg = state;
    Vector nonlinear_arg = state;
    for (int j = 0; j < i; ++j) {
      if (tableau.beta(i, j) != 0.0) linear_arg += h * tableau.beta(i, j) * stages[j];
      if (tableau.alpha(i, j) != 0.0) nonlinear_arg += h * tableau.alpha(i, j) * stages[j];
    }
    Vector rhs = a * linear_arg + sys.f.apply(nonlinear_arg);
    stages[i] = solvers.at(h * tableau.beta(i, i)).solve(rhs);
  }

  Vector out = state;
  for (int i = 0; i < s; ++i) out += h * tableau.b(i) * stages[i];
  return out;
}

Lirk2Stepper::Lirk2Stepper(LirkParams p, const OdeSystem& sys, double h)
    : p_(p), sys_(&sys), h_(h), solver_(sys.linear, h * p.p2) {
  if (!(p.p1 > 0.0) || !(p.p2 > 0.0))
    throw std::invalid_argument("LIRK parameters must be positive");
  if (h < 0.0) throw std::invalid_argument("step size must be nonnegative");
}

Matrix Lirk2Stepper::step(const Matrix& states) const {
  if (h_ == 0.0) return states;
  const Matrix& a = sys_->linear;
  const Nonlinearity& f = sys_->f;
  Matrix k1 = solver_.solve(a * states + f.apply(states));
  Matrix linear_arg = states + (h_ * 2.0 * p_.p1 * (0.5 - p_.p2)) * k1;
  Matrix nonlinear_arg = states + (h_ * p_.p1) * k1;
  Matrix k2 = solver_.solve(a * linear_arg + f.apply(nonlinear_arg));
  double b1 = 1.0 - 1.0 / (2.0 * p_.p1);
  double b2 = 1.0 / (2.0 * p_.p1);
  return states + h_ * (b1 * k1 + b2 * k2);
}

Vector Lirk2Stepper::step(const Vector& state) const {
  return step(Matrix(state)).col(0);
}

Vector lirk_step2(LirkParams p, const OdeSystem& sys, double h, const Vector& state) {
  if (h == 0.0) return state;
  return Lirk2Stepper(p, sys, h).step(state);
}

Vector crank_nicolson_midpoint_step(const OdeSystem& sys, double h, const Vector& state) {
  if (h < 0.0) throw std::invalid_argument("step size must be nonnegative");
  if (h == 0.0) return state;
  const Matrix& a = sys.linear;
  ShiftedSolver solver(a, 0.5 * h);
  Vector inner = solver.solve(state + 0.5 * h * sys.f.apply(state));
  Vector rhs = state + 0.5 * h * (a * state) + h * sys.f.apply(inner);
  return solver.solve(rhs);
}

Matrix rollout(LirkParams p, const OdeSystem& sys, double terminal_time, int steps,
               const Matrix& states) {
  if (steps < 1) throw std::invalid_argument("rollout requires at least one step");
  Lirk2Stepper stepper(p, sys, terminal_time / steps);
  Matrix current = states;
  for (int m = 0; m < steps; ++m) current = stepper.step(current);
  return current;
}

Vector rollout(LirkParams p, const OdeSystem& sys, double terminal_time, int steps,
               const Vector& state) {
  return rollout(p, sys, terminal_time, steps, Matrix(state)).col(0);
}

} // namespace adann
