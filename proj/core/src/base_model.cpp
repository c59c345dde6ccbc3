#include "adann/base_model.hpp"

#include <stdexcept>

#include "adann/grid.hpp"

namespace adann {

BaseWeights BaseWeights::zeros_like(const BaseWeights& other) {
  BaseWeights w;
  w.blocks.resize(other.blocks.size());
  long d = other.dimension();
  for (auto& block : w.blocks)
    for (auto& m : block) m = Matrix::Zero(d, d);
  return w;
}

BaseGradient BaseGradient::zeros_like(const BaseWeights& weights) {
  BaseGradient g;
  g.blocks.resize(weights.blocks.size());
  long d = weights.dimension();
  for (auto& block : g.blocks)
    for (auto& m : block) m = Matrix::Zero(d, d);
  return g;
}

BaseWeights base_weights_from_lirk(LirkParams p, const Matrix& a, double terminal_time,
                                   int steps) {
  if (!(p.p1 > 0.0) || !(p.p2 > 0.0))
    throw std::invalid_argument("LIRK parameters must be positive");
  if (steps < 1) throw std::invalid_argument("at least one block required");
  if (a.rows() != a.cols()) throw std::invalid_argument("operator must be square");

  double big_h = terminal_time / steps;
  long d = a.rows();
  ShiftedSolver solver(a, big_h * p.p2);
  Matrix inv = solver.solve(Matrix::Identity(d, d)); // (I - H p2 A)^{-1}
  Matrix inv_a = inv * a;

  std::array<Matrix, 5> block;
  double half_minus_p2 = 0.5 - p.p2;
  block[0] = inv + big_h * (1.0 - p.p2) * inv_a +
             (big_h * big_h * half_minus_p2) * (inv_a * inv_a);
  block[1] = big_h * (1.0 - 1.0 / (2.0 * p.p1)) * inv +
             (big_h * big_h * half_minus_p2) * (inv_a * inv);
  block[2] = (big_h / (2.0 * p.p1)) * inv;
  block[3] = inv + big_h * (p.p1 - p.p2) * inv_a;
  block[4] = (big_h * p.p1) * inv;

  BaseWeights weights;
  weights.blocks.assign(steps, block);
  return weights;
}

Matrix base_forward(const BaseWeights& weights, const Nonlinearity& f,
                    const Matrix& initial, BaseTape* tape) {
  if (weights.blocks.empty()) throw std::invalid_argument("empty base model");
  if (initial.rows() != weights.dimension())
    throw std::invalid_argument("state dimension does not match weights");
  if (tape) {
    tape->inputs.clear();
    tape->f_inputs.clear();
    tape->inner.clear();
    tape->f_inner.clear();
  }
  Matrix state = initial;
  for (const auto& block : weights.blocks) {
    Matrix f_state = f.apply(state);
    Matrix inner = block[3] * state + block[4] * f_state;
    Matrix f_inner = f.apply(inner);
    Matrix next = block[0] * state + block[1] * f_state + block[2] * f_inner;
    if (tape) {
      tape->inputs.push_back(std::move(state));
      tape->f_inputs.push_back(std::move(f_state));
      tape->inner.push_back(std::move(inner));
      tape->f_inner.push_back(std::move(f_inner));
    }
    state = std::move(next);
  }
  if (tape) tape->output = state;
  return state;
}

Vector base_forward(const BaseWeights& weights, const Nonlinearity& f,
                    const Vector& initial, BaseTape* tape) {
  return base_forward(weights, f, Matrix(initial), tape).col(0);
}

BaseGradient base_backward(const BaseWeights& weights, const Nonlinearity& f,
                           const BaseTape& tape, const Matrix& cotangents,
                           bool with_input_gradient) {
  int depth = weights.depth();
  if (static_cast<int>(tape.inputs.size()) != depth)
    throw std::invalid_argument("tape does not match weights");
  if (cotangents.rows() != weights.dimension() ||
      cotangents.cols() != tape.output.cols())
    throw std::invalid_argument("cotangent shape does not match forward pass");

  BaseGradient grad = BaseGradient::zeros_like(weights);
  Matrix lambda = cotangents;
  for (int m = depth - 1; m >= 0; --m) {
    const auto& block = weights.blocks[m];
    const Matrix& state = tape.inputs[m];
    const Matrix& f_state = tape.f_inputs[m];
    const Matrix& f_inner = tape.f_inner[m];

    grad.blocks[m][0] = lambda * state.transpose();
    grad.blocks[m][1] = lambda * f_state.transpose();
    grad.blocks[m][2] = lambda * f_inner.transpose();

    Matrix mu = (block[2].transpose() * lambda).cwiseProduct(f.apply_deriv(tape.inner[m]));
    grad.blocks[m][3] = mu * state.transpose();
    grad.blocks[m][4] = mu * f_state.transpose();

    if (m > 0 || with_input_gradient) {
      Matrix df_state = f.apply_deriv(state);
      lambda = block[0].transpose() * lambda +
               (block[1].transpose() * lambda).cwiseProduct(df_state) +
               block[3].transpose() * mu +
               (block[4].transpose() * mu).cwiseProduct(df_state);
    }
  }
  if (with_input_gradient) grad.input_gradient = std::move(lambda);
  return grad;
}

} // namespace adann
