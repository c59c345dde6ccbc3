#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "adann/base_model.hpp"
#include "adann/mlp.hpp"
#include "adann/problems.hpp"
#include "adann/types.hpp"

namespace adann {

/// Bias-corrected ADAM over a flat parameter vector.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(long dim, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8);

  void step(Vector& params, const Vector& grad, double learning_rate);
  long step_count() const { return t_; }

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  Vector m_, v_;
};

Vector pack_parameters(const BaseWeights& weights);
void unpack_parameters(const Vector& flat, BaseWeights& weights);
Vector pack_gradient(const BaseGradient& grad);

Vector pack_parameters(const MlpWeights& weights);
void unpack_parameters(const Vector& flat, MlpWeights& weights);
Vector pack_gradient(const MlpGradient& grad);

Matrix gather_columns(const Matrix& m, const std::vector<long>& indices);

/// Squared-seminorm loss of the base model on one sample; optionally fills
/// the exact gradient.
double base_loss(const BaseWeights& weights, const Nonlinearity& f, const Vector& input,
                 const Vector& target, BaseGradient* grad = nullptr);

/// Mean squared-seminorm loss over batch columns (+ summed gradient).
double base_batch_loss(const BaseWeights& weights, const Nonlinearity& f,
                       const Matrix& inputs, const Matrix& targets,
                       BaseGradient* grad = nullptr);

/// Monte-Carlo estimate of the root expected squared-seminorm error of the
/// base model over the first n_mc samples; floored at 1e-12.
double estimate_error_scale(const BaseWeights& weights, const Nonlinearity& f,
                            const Matrix& inputs, const Matrix& targets, long n_mc);

/// Squared-seminorm loss of the difference model against the 1/eps-scaled
/// residual of the (frozen) base model.
double diff_loss(const MlpWeights& theta, const BaseWeights& weights,
                 const Nonlinearity& f, double eps, const Vector& input,
                 const Vector& target, MlpGradient* grad = nullptr);

/// Full model: base(input) + eps * difference(input).
Matrix full_model_eval(const BaseWeights& weights, const Nonlinearity& f,
                       const MlpWeights& theta, double eps, const Matrix& inputs);

struct TrainConfig {
  double learning_rate = 1e-3;
  double plateau_factor = 0.3;
  int plateau_patience = 5;
  double improvement_threshold = 0.01; // relative improvement that resets patience
  int initial_batch = 64;
  int max_batch = 1024;
  int max_steps = 2000;
  int eval_every = 50;
  double validation_fraction = 0.125;
  std::uint64_t seed = 0;
};

/// Mini-batch size at a given step: starts at initial_batch and doubles at
/// every quarter of the step budget, capped at max_batch.
int batch_size_at(const TrainConfig& cfg, int step);

struct LossCurvePoint {
  int step = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
};

struct TrainLog {
  std::vector<LossCurvePoint> curve;
  bool diverged = false;
  double best_validation_loss = std::numeric_limits<double>::infinity();
  int best_step = 0;
};

/// Mini-batch ADAM on the base loss; returns the weights with the best
/// validation loss seen (never worse than the initialization).
BaseWeights train_base(const BaseWeights& init, const Nonlinearity& f,
                       const Matrix& train_inputs, const Matrix& train_targets,
                       const Matrix& val_inputs, const Matrix& val_targets,
                       const TrainConfig& cfg, TrainLog* log = nullptr);

/// Trains the difference model against the frozen base residuals. The zero
/// network is always a candidate, so the returned weights never make the
/// full model worse than the base alone (on validation).
MlpWeights train_difference(const MlpWeights& init, const BaseWeights& base,
                            const Nonlinearity& f, double eps,
                            const Matrix& train_inputs, const Matrix& train_targets,
                            const Matrix& val_inputs, const Matrix& val_targets,
                            const TrainConfig& cfg, TrainLog* log = nullptr);

struct ErrorReport {
  double l1_error = 0.0;
  double l2_error = 0.0;
  long sample_count = 0;
  long parameter_count = 0;
  double training_seconds = 0.0;
  double eval_seconds = 0.0;
};

using ModelFn = std::function<Matrix(const Matrix&)>;

/// Estimated L1/L2 errors of a model over a held-out set (columns are
/// samples).
ErrorReport evaluate(const ModelFn& model, const Matrix& inputs, const Matrix& targets);

} // namespace adann
