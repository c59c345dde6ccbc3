#include "adann/training.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "adann/rng.hpp"

namespace adann {

AdamOptimizer::AdamOptimizer(long dim, double beta1, double beta2, double eps)
    : beta1_(beta1), beta2_(beta2), eps_(eps), m_(Vector::Zero(dim)),
      v_(Vector::Zero(dim)) {}

void AdamOptimizer::step(Vector& params, const Vector& grad, double learning_rate) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw std::invalid_argument("parameter/gradient size mismatch");
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params.array() -=
      learning_rate * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

Vector pack_parameters(const BaseWeights& weights) {
  Vector flat(weights.parameter_count());
  long offset = 0;
  for (const auto& block : weights.blocks)
    for (const auto& m : block) {
      flat.segment(offset, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
      offset += m.size();
    }
  return flat;
}

void unpack_parameters(const Vector& flat, BaseWeights& weights) {
  if (flat.size() != weights.parameter_count())
    throw std::invalid_argument("flat parameter size mismatch");
  long offset = 0;
  for (auto& block : weights.blocks)
    for (auto& m : block) {
      Eigen::Map<Vector>(m.data(), m.size()) = flat.segment(offset, m.size());
      offset += m.size();
    }
}

Vector pack_gradient(const BaseGradient& grad) {
  long total = 0;
  for (const auto& block : grad.blocks)
    for (const auto& m : block) total += m.size();
  Vector flat(total);
  long offset = 0;
  for (const auto& block : grad.blocks)
    for (const auto& m : block) {
      flat.segment(offset, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
      offset += m.size();
    }
  return flat;
}

Vector pack_parameters(const MlpWeights& weights) {
  Vector flat(weights.parameter_count());
  long offset = 0;
  for (std::size_t l = 0; l < weights.w.size(); ++l) {
    const Matrix& m = weights.w[l];
    flat.segment(offset, m.size()) = Eigen::Map<const Vector>(m.data(), m.size());
    offset += m.size();
    flat.segment(offset, weights.b[l].size()) = weights.b[l];
    offset += weights.b[l].size();
  }
  return flat;
}

void unpack_parameters(const Vector& flat, MlpWeights& weights) {
  if (flat.size() != weights.parameter_count())
    throw std::invalid_argument("flat parameter size mismatch");
  long offset = 0;
  for (std::size_t l = 0; l < weights.w.size(); ++l) {
    Matrix& m = weights.w[l];
    Eigen::Map<Vector>(m.data(), m.size()) = flat.segment(offset, m.size());
    offset += m.size();
    weights.b[l] = flat.segment(offset, weights.b[l].size());
    offset += weights.b[l].size();
  }
}

Vector pack_gradient(const MlpGradient& grad) {
  long total = 0;
  for (std::size_t l = 0; l < grad.w.size(); ++l)
    total += grad.w[l].size() + grad.b[l].size();
  Vector flat(total);
  long offset = 0;
  for (std::size_t l = 0; l < grad.w.size(); ++l) {
    flat.segment(offset, grad.w[l].size()) =
        Eigen::Map<const Vector>(grad.w[l].data(), grad.w[l].size());
    offset += grad.w[l].size();
    flat.segment(offset, grad.b[l].size()) = grad.b[l];
    offset += grad.b[l].size();
  }
  return flat;
}

Matrix gather_columns(const Matrix& m, const std::vector<long>& indices) {
  Matrix out(m.rows(), static_cast<long>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k)
    out.col(static_cast<long>(k)) = m.col(indices[k]);
  return out;
}

namespace {

double mean_squared_seminorm(const Matrix& residual) {
  return residual.squaredNorm() /
         (static_cast<double>(residual.rows()) * static_cast<double>(residual.cols()));
}

} // namespace

double base_loss(const BaseWeights& weights, const Nonlinearity& f, const Vector& input,
                 const Vector& target, BaseGradient* grad) {
  return base_batch_loss(weights, f, Matrix(input), Matrix(target), grad);
}

double base_batch_loss(const BaseWeights& weights, const Nonlinearity& f,
                       const Matrix& inputs, const Matrix& targets,
                       BaseGradient* grad) {
  if (inputs.cols() != targets.cols() || targets.rows() != weights.dimension())
    throw std::invalid_argument("input/target shape mismatch");
  if (!grad) {
    Matrix residual = base_forward(weights, f, inputs) - targets;
    return mean_squared_seminorm(residual);
  }
  BaseTape tape;
  Matrix residual = base_forward(weights, f, inputs, &tape) - targets;
  double loss = mean_squared_seminorm(residual);
  Matrix cotangent =
      (2.0 / (static_cast<double>(residual.rows()) * residual.cols())) * residual;
  *grad = base_backward(weights, f, tape, cotangent);
  return loss;
}

double estimate_error_scale(const BaseWeights& weights, const Nonlinearity& f,
                            const Matrix& inputs, const Matrix& targets, long n_mc) {
  if (inputs.cols() == 0) throw std::invalid_argument("empty dataset");
  if (n_mc < 1 || n_mc > inputs.cols())
    throw std::invalid_argument("n_mc must be in [1, dataset size]");
  Matrix residual = base_forward(weights, f, Matrix(inputs.leftCols(n_mc))) -
                    targets.leftCols(n_mc);
  double eps = std::sqrt(mean_squared_seminorm(residual));
  return std::max(eps, 1e-12);
}

double diff_loss(const MlpWeights& theta, const BaseWeights& weights,
                 const Nonlinearity& f, double eps, const Vector& input,
                 const Vector& target, MlpGradient* grad) {
  if (!(eps > 0.0)) throw std::invalid_argument("error scale must be positive");
  Vector scaled_residual = (target - base_forward(weights, f, input)) / eps;
  if (!grad) {
    Vector out = mlp_forward(theta, input);
    return (out - scaled_residual).squaredNorm() / static_cast<double>(out.size());
  }
  MlpTape tape;
  Vector out = mlp_forward(theta, Matrix(input), &tape).col(0);
  Vector residual = out - scaled_residual;
  double loss = residual.squaredNorm() / static_cast<double>(residual.size());
  Matrix cotangent = (2.0 / static_cast<double>(residual.size())) * Matrix(residual);
  *grad = mlp_backward(theta, tape, cotangent);
  return loss;
}

Matrix full_model_eval(const BaseWeights& weights, const Nonlinearity& f,
                       const MlpWeights& theta, double eps, const Matrix& inputs) {
  return base_forward(weights, f, inputs) + eps * mlp_forward(theta, inputs);
}

int batch_size_at(const TrainConfig& cfg, int step) {
  int quarter = 0;
  if (cfg.max_steps > 0)
    quarter = std::min(3, (4 * step) / cfg.max_steps);
  long size = static_cast<long>(cfg.initial_batch) << quarter;
  return static_cast<int>(std::min<long>(size, cfg.max_batch));
}

namespace {

/// Shared mini-batch ADAM driver. `batch_loss` fills the gradient vector for
/// the given batch columns; `val_loss` scores current parameters on the
/// validation split.
struct LoopCallbacks {
  std::function<double(const std::vector<long>&, Vector&)> batch_loss;
  std::function<double()> val_loss;
};

Vector run_training_loop(Vector params, long n_train, const TrainConfig& cfg,
                         const LoopCallbacks& cb,
                         const std::function<void(const Vector&)>& set_params,
                         TrainLog* log) {
  TrainLog local;
  TrainLog& out = log ? *log : local;
  out.curve.clear();
  out.diverged = false;

  set_params(params);
  double best_val = cb.val_loss();
  Vector best_params = params;
  out.best_validation_loss = best_val;
  out.best_step = 0;
  out.curve.push_back({0, best_val, best_val});

  if (cfg.max_steps <= 0 || n_train == 0) return best_params;

  AdamOptimizer adam(params.size());
  std::mt19937_64 gen =
      make_generator(derive_seed(cfg.seed, seed_stream::batch_order, 0));
  std::uniform_int_distribution<long> pick(0, n_train - 1);
  double lr = cfg.learning_rate;
  int stall = 0;
  Vector grad(params.size());

  for (int step = 1; step <= cfg.max_steps; ++step) {
    int batch = static_cast<int>(std::min<long>(batch_size_at(cfg, step - 1), n_train));
    std::vector<long> idx(batch);
    for (int k = 0; k < batch; ++k) idx[k] = pick(gen);

    double train_loss = cb.batch_loss(idx, grad);
    adam.step(params, grad, lr);
    set_params(params);

    if (step % cfg.eval_every == 0 || step == cfg.max_steps) {
      double val = cb.val_loss();
      out.curve.push_back({step, train_loss, val});
      if (!std::isfinite(val)) {
        out.diverged = true;
        break;
      }
      if (val < best_val * (1.0 - cfg.improvement_threshold)) {
        stall = 0;
      } else if (++stall >= cfg.plateau_patience) {
        lr *= cfg.plateau_factor;
        stall = 0;
      }
      if (val < best_val) {
        best_val = val;
        best_params = params;
        out.best_validation_loss = val;
        out.best_step = step;
      }
    }
  }
  return best_params;
}

} // namespace

BaseWeights train_base(const BaseWeights& init, const Nonlinearity& f,
                       const Matrix& train_inputs, const Matrix& train_targets,
                       const Matrix& val_inputs, const Matrix& val_targets,
                       const TrainConfig& cfg, TrainLog* log) {
  if (train_inputs.cols() == 0) throw std::invalid_argument("empty training set");
  BaseWeights work = init;

  LoopCallbacks cb;
  cb.batch_loss = [&](const std::vector<long>& idx, Vector& grad) {
    Matrix in = gather_columns(train_inputs, idx);
    Matrix tg = gather_columns(train_targets, idx);
    BaseGradient g;
    double loss = base_batch_loss(work, f, in, tg, &g);
    grad = pack_gradient(g);
    return loss;
  };
  cb.val_loss = [&] { return base_batch_loss(work, f, val_inputs, val_targets); };

  Vector best = run_training_loop(
      pack_parameters(init), train_inputs.cols(), cfg, cb,
      [&](const Vector& p) { unpack_parameters(p, work); }, log);
  unpack_parameters(best, work);
  return work;
}

MlpWeights train_difference(const MlpWeights& init, const BaseWeights& base,
                            const Nonlinearity& f, double eps,
                            const Matrix& train_inputs, const Matrix& train_targets,
                            const Matrix& val_inputs, const Matrix& val_targets,
                            const TrainConfig& cfg, TrainLog* log) {
  if (!(eps > 0.0)) throw std::invalid_argument("error scale must be positive");
  if (train_inputs.cols() == 0) throw std::invalid_argument("empty training set");

  // The base model and eps stay frozen, so the regression targets are fixed.
  Matrix train_residual =
      (train_targets - base_forward(base, f, train_inputs)) / eps;
  Matrix val_residual = (val_targets - base_forward(base, f, val_inputs)) / eps;

  MlpWeights work = init;
  LoopCallbacks cb;
  cb.batch_loss = [&](const std::vector<long>& idx, Vector& grad) {
    Matrix in = gather_columns(train_inputs, idx);
    Matrix tg = gather_columns(train_residual, idx);
    MlpTape tape;
    Matrix residual = mlp_forward(work, in, &tape) - tg;
    double loss = mean_squared_seminorm(residual);
    Matrix cotangent =
        (2.0 / (static_cast<double>(residual.rows()) * residual.cols())) * residual;
    grad = pack_gradient(mlp_backward(work, tape, cotangent));
    return loss;
  };
  cb.val_loss = [&] {
    return mean_squared_seminorm(mlp_forward(work, val_inputs) - val_residual);
  };

  Vector best = run_training_loop(
      pack_parameters(init), train_inputs.cols(), cfg, cb,
      [&](const Vector& p) { unpack_parameters(p, work); }, log);
  unpack_parameters(best, work);

  // Zero network fallback: never worse than the base model alone.
  double trained_val =
      mean_squared_seminorm(mlp_forward(work, val_inputs) - val_residual);
  double zero_val = mean_squared_seminorm(val_residual);
  if (!(trained_val < zero_val)) {
    MlpWeights zeros = MlpWeights::zeros(init.spec());
    if (log) log->best_validation_loss = zero_val;
    return zeros;
  }
  return work;
}

ErrorReport evaluate(const ModelFn& model, const Matrix& inputs, const Matrix& targets) {
  if (inputs.cols() == 0) throw std::invalid_argument("empty evaluation set");
  if (inputs.cols() != targets.cols())
    throw std::invalid_argument("input/target count mismatch");
  Vector errors = column_seminorms(model(inputs) - targets);
  ErrorReport report;
  report.sample_count = inputs.cols();
  report.l1_error = errors.mean();
  report.l2_error = std::sqrt(errors.squaredNorm() / static_cast<double>(errors.size()));
  return report;
}

} // namespace adann
