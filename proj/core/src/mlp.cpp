#include "adann/mlp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adann {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }
inline double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
} // namespace

double gelu(double x) { return x * normal_cdf(x); }

double gelu_prime(double x) { return normal_cdf(x) + x * normal_pdf(x); }

Matrix gelu(const Matrix& x) {
  return x.unaryExpr([](double v) { return gelu(v); });
}

Matrix gelu_prime(const Matrix& x) {
  return x.unaryExpr([](double v) { return gelu_prime(v); });
}

MlpSpec MlpWeights::spec() const {
  MlpSpec s;
  if (w.empty()) return s;
  s.widths.push_back(static_cast<int>(w.front().cols()));
  for (const auto& layer : w) s.widths.push_back(static_cast<int>(layer.rows()));
  return s;
}

long MlpWeights::parameter_count() const {
  long count = 0;
  for (std::size_t l = 0; l < w.size(); ++l) count += w[l].size() + b[l].size();
  return count;
}

MlpWeights MlpWeights::zeros(const MlpSpec& spec) {
  if (spec.widths.size() < 2)
    throw std::invalid_argument("MLP needs at least input and output widths");
  MlpWeights weights;
  for (int l = 0; l < spec.layer_count(); ++l) {
    weights.w.push_back(Matrix::Zero(spec.widths[l + 1], spec.widths[l]));
    weights.b.push_back(Vector::Zero(spec.widths[l + 1]));
  }
  return weights;
}

MlpWeights glorot_uniform_init(const MlpSpec& spec, std::mt19937_64& gen) {
  MlpWeights weights = MlpWeights::zeros(spec);
  for (std::size_t l = 0; l < weights.w.size(); ++l) {
    double fan_in = static_cast<double>(weights.w[l].cols());
    double fan_out = static_cast<double>(weights.w[l].rows());
    double a = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-a, a);
    for (long j = 0; j < weights.w[l].cols(); ++j)
      for (long i = 0; i < weights.w[l].rows(); ++i) weights.w[l](i, j) = uniform(gen);
  }
  return weights;
}

Matrix mlp_forward(const MlpWeights& weights, const Matrix& input, MlpTape* tape) {
  if (weights.w.empty()) throw std::invalid_argument("empty MLP");
  if (input.rows() != weights.w.front().cols())
    throw std::invalid_argument("input width does not match first layer");
  if (tape) {
    tape->activations.assign(1, input);
    tape->pre_activations.clear();
  }
  Matrix act = input;
  int layers = static_cast<int>(weights.w.size());
  for (int l = 0; l < layers; ++l) {
    Matrix pre = (weights.w[l] * act).colwise() + weights.b[l];
    Matrix next = (l + 1 < layers) ? gelu(pre) : pre;
    if (tape) {
      tape->pre_activations.push_back(std::move(pre));
      tape->activations.push_back(next);
    }
    act = std::move(next);
  }
  return act;
}

Vector mlp_forward(const MlpWeights& weights, const Vector& input, MlpTape* tape) {
  return mlp_forward(weights, Matrix(input), tape).col(0);
}

MlpGradient mlp_backward(const MlpWeights& weights, const MlpTape& tape,
                         const Matrix& cotangents, bool with_input_gradient) {
  int layers = static_cast<int>(weights.w.size());
  if (static_cast<int>(tape.pre_activations.size()) != layers)
    throw std::invalid_argument("tape does not match weights");

  MlpGradient grad;
  grad.w.resize(layers);
  grad.b.resize(layers);
  Matrix delta = cotangents;
  for (int l = layers - 1; l >= 0; --l) {
    grad.w[l] = delta * tape.activations[l].transpose();
    grad.b[l] = delta.rowwise().sum();
    if (l > 0) {
      delta = (weights.w[l].transpose() * delta)
                  .cwiseProduct(gelu_prime(tape.pre_activations[l - 1]));
    } else if (with_input_gradient) {
      grad.input_gradient = weights.w[0].transpose() * delta;
    }
  }
  return grad;
}

} // namespace adann
