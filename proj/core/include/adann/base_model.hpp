#pragma once

#include <array>
#include <vector>

#include "adann/lirk.hpp"
#include "adann/nonlinearity.hpp"
#include "adann/types.hpp"

namespace adann {

/// Trainable parameters of the base model: M blocks of five d x d matrices.
/// Block m maps U_{m-1} to
///   U_m = W1 U + W2 f(U) + W3 f(W4 U + W5 f(U)).
struct BaseWeights {
  std::vector<std::array<Matrix, 5>> blocks;

  long dimension() const { return blocks.empty() ? 0 : blocks[0][0].rows(); }
  int depth() const { return static_cast<int>(blocks.size()); }
  long parameter_count() const { return 5L * depth() * dimension() * dimension(); }

  static BaseWeights zeros_like(const BaseWeights& other);
};

/// Weights that make the untrained base model reproduce the M-step LIRK
/// rollout exactly: every block equals the compact one-step matrices built
/// from (p, A, H = T/M).
BaseWeights base_weights_from_lirk(LirkParams p, const Matrix& a, double terminal_time,
                                   int steps);

/// Saved intermediates of one forward pass, enough to replay it and to run
/// the reverse-mode pass. Batched: states are columns.
struct BaseTape {
  std::vector<Matrix> inputs;   // U_{m-1}
  std::vector<Matrix> f_inputs; // f(U_{m-1})
  std::vector<Matrix> inner;    // V_m = W4 U_{m-1} + W5 f(U_{m-1})
  std::vector<Matrix> f_inner;  // f(V_m)
  Matrix output;
};

Matrix base_forward(const BaseWeights& weights, const Nonlinearity& f,
                    const Matrix& initial, BaseTape* tape = nullptr);
Vector base_forward(const BaseWeights& weights, const Nonlinearity& f,
                    const Vector& initial, BaseTape* tape = nullptr);

/// Gradients with respect to every weight matrix, plus (optionally) the
/// gradient with respect to the input states.
struct BaseGradient {
  std::vector<std::array<Matrix, 5>> blocks;
  Matrix input_gradient; // empty unless requested

  static BaseGradient zeros_like(const BaseWeights& weights);
};

/// Exact reverse-mode pass through the block recursion. `cotangents` holds
/// one output cotangent per batch column; gradients are summed over the
/// batch.
BaseGradient base_backward(const BaseWeights& weights, const Nonlinearity& f,
                           const BaseTape& tape, const Matrix& cotangents,
                           bool with_input_gradient = false);

} // namespace adann
