#pragma once

#include <random>
#include <vector>

#include "adann/types.hpp"

namespace adann {

/// x * Phi(x), Phi the standard normal CDF (exact erf form).
double gelu(double x);
/// Phi(x) + x * phi(x).
double gelu_prime(double x);

Matrix gelu(const Matrix& x);
Matrix gelu_prime(const Matrix& x);

/// Layer widths, input first. Hidden layers use GELU, the output layer is
/// affine.
struct MlpSpec {
  std::vector<int> widths;

  int input_width() const { return widths.front(); }
  int output_width() const { return widths.back(); }
  int layer_count() const { return static_cast<int>(widths.size()) - 1; }
};

struct MlpWeights {
  std::vector<Matrix> w; // out x in per layer
  std::vector<Vector> b;

  MlpSpec spec() const;
  long parameter_count() const;

  static MlpWeights zeros(const MlpSpec& spec);
};

/// Glorot uniform: entries ~ U(-a, a) with a = sqrt(6/(fan_in + fan_out)),
/// biases zero.
MlpWeights glorot_uniform_init(const MlpSpec& spec, std::mt19937_64& gen);

struct MlpTape {
  std::vector<Matrix> activations;     // a_0 = input, ..., a_{L}
  std::vector<Matrix> pre_activations; // z_1, ..., z_L
};

Matrix mlp_forward(const MlpWeights& weights, const Matrix& input,
                   MlpTape* tape = nullptr);
Vector mlp_forward(const MlpWeights& weights, const Vector& input,
                   MlpTape* tape = nullptr);

struct MlpGradient {
  std::vector<Matrix> w;
  std::vector<Vector> b;
  Matrix input_gradient;
};

MlpGradient mlp_backward(const MlpWeights& weights, const MlpTape& tape,
                         const Matrix& cotangents, bool with_input_gradient = false);

} // namespace adann
