#include "adann/orchestration.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "adann/rng.hpp"

namespace adann {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}
} // namespace

std::vector<LirkParams> SweepPlan::cartesian(const std::vector<double>& p1,
                                             const std::vector<double>& p2) {
  std::vector<LirkParams> grid;
  grid.reserve(p1.size() * p2.size());
  for (double a : p1)
    for (double b : p2) grid.push_back({a, b});
  return grid;
}

SweepPlan SweepPlan::grid_preset(const std::string& problem) {
  SweepPlan plan;
  plan.mode = Mode::grid;
  if (problem == "rd1d") {
    std::vector<double> p1, p2;
    for (int i = 1; i <= 9; ++i) p1.push_back(i / 10.0);
    for (int i = 3; i <= 9; ++i) p2.push_back(i / 10.0);
    plan.grid = cartesian(p1, p2);
  } else if (problem == "sg1d") {
    plan.grid = cartesian({0.1, 0.3, 0.5, 0.7, 0.9},
                          {6.0 / 30.0, 13.0 / 30.0, 20.0 / 30.0, 27.0 / 30.0});
  } else if (problem == "heat2d") {
    std::vector<double> p1, p2;
    for (int i = 1; i <= 9; ++i) p1.push_back(i / 10.0);
    for (int i = 2; i <= 9; ++i) p2.push_back(i / 10.0);
    plan.grid = cartesian(p1, p2);
  } else {
    throw std::invalid_argument("no grid preset for problem " + problem);
  }
  return plan;
}

SweepPlan SweepPlan::adaptive_preset(const std::string& problem, int runs) {
  SweepPlan plan;
  plan.mode = Mode::adaptive_random;
  plan.runs = runs;
  plan.p1_range = {0.1, 0.9};
  if (problem == "rd1d")
    plan.p2_range = {0.3, 0.9};
  else
    plan.p2_range = {0.2, 0.9};
  return plan;
}

int base_depth_for(const std::string& problem) {
  if (problem == "rd1d") return 5;
  if (problem == "sg1d") return 15;
  if (problem == "heat2d") return 2;
  throw std::invalid_argument("no base depth preset for problem " + problem);
}

MlpSpec difference_spec_for(const std::string& problem, long coarse_dim) {
  int d = static_cast<int>(coarse_dim);
  if (problem == "rd1d") return {{d, 50, 150, d}};
  if (problem == "sg1d") return {{d, 128, 128, d}};
  if (problem == "heat2d") return {{d, 512, 512, d}};
  throw std::invalid_argument("no difference model preset for problem " + problem);
}

MlpSpec baseline_ann_spec_for(const std::string& problem, long coarse_dim) {
  int d = static_cast<int>(coarse_dim);
  if (problem == "rd1d") return {{d, 100, 220, 150, d}};
  if (problem == "sg1d") return {{d, 100, 300, 160, d}};
  if (problem == "heat2d") return {{d, 3200, 3200, 3200, d}};
  throw std::invalid_argument("no baseline preset for problem " + problem);
}

namespace {

struct PipelineContext {
  const ProblemSpec& problem;
  const DatasetSplits& data;
  const SweepSettings& settings;
  Matrix laplacian;
  int depth;
  MlpSpec diff_spec;
};

PipelineContext make_context(const ProblemSpec& problem, const DatasetSplits& data,
                             const SweepSettings& settings) {
  if (data.train_inputs.rows() != problem.grid.unknowns())
    throw std::invalid_argument("sweep data must hold model-ready coarse inputs");
  return {problem,
          data,
          settings,
          build_laplacian(problem.grid),
          base_depth_for(problem.name),
          difference_spec_for(problem.name, problem.grid.unknowns())};
}

double validation_l2(const PipelineContext& ctx, const ModelFn& model) {
  Vector errors = column_seminorms(model(ctx.data.validation_inputs) -
                                   ctx.data.validation_targets);
  return std::sqrt(errors.squaredNorm() / static_cast<double>(errors.size()));
}

/// Full pipeline for one initialization p.
RunRecord execute_run(const PipelineContext& ctx, int run_index, LirkParams p) {
  auto start = std::chrono::steady_clock::now();
  const auto& settings = ctx.settings;
  const Nonlinearity& f = ctx.problem.f;

  RunRecord record;
  record.run_index = run_index;
  record.base_run_index = run_index;
  record.p = p;
  record.init_l2 = record.base_l2 = record.full_l2 = kInf;
  record.epsilon = 0.0;
  try {
    BaseWeights init = base_weights_from_lirk(p, ctx.laplacian,
                                              ctx.problem.terminal_time, ctx.depth);
    record.init_l2 = validation_l2(
        ctx, [&](const Matrix& x) { return base_forward(init, f, x); });

    TrainConfig base_cfg = settings.base_training;
    base_cfg.seed = derive_seed(settings.seed, seed_stream::run_training,
                                2 * static_cast<std::uint64_t>(run_index));
    record.base = train_base(init, f, ctx.data.train_inputs, ctx.data.train_targets,
                             ctx.data.validation_inputs, ctx.data.validation_targets,
                             base_cfg);
    record.base_l2 = validation_l2(
        ctx, [&](const Matrix& x) { return base_forward(record.base, f, x); });

    long n_mc = std::min<long>(settings.error_scale_samples, ctx.data.train_inputs.cols());
    record.epsilon = estimate_error_scale(record.base, f, ctx.data.train_inputs,
                                          ctx.data.train_targets, n_mc);

    std::mt19937_64 glorot_gen = make_generator(
        derive_seed(settings.seed, seed_stream::glorot_init,
                    static_cast<std::uint64_t>(run_index)));
    MlpWeights theta0 = glorot_uniform_init(ctx.diff_spec, glorot_gen);
    TrainConfig diff_cfg = settings.diff_training;
    diff_cfg.seed = derive_seed(settings.seed, seed_stream::run_training,
                                2 * static_cast<std::uint64_t>(run_index) + 1);
    record.diff = train_difference(theta0, record.base, f, record.epsilon,
                                   ctx.data.train_inputs, ctx.data.train_targets,
                                   ctx.data.validation_inputs,
                                   ctx.data.validation_targets, diff_cfg);
    record.full_l2 = validation_l2(ctx, [&](const Matrix& x) {
      return full_model_eval(record.base, f, record.diff, record.epsilon, x);
    });
    record.ok = true;
    record.status = "ok";
  } catch (const std::exception& e) {
    record.ok = false;
    record.status = e.what();
  }
  record.training_seconds = elapsed_seconds(start);
  return record;
}

/// (B) run: fresh difference model on an existing trained base.
RunRecord execute_difference_only_run(const PipelineContext& ctx, int run_index,
                                      const RunRecord& parent) {
  auto start = std::chrono::steady_clock::now();
  const auto& settings = ctx.settings;
  const Nonlinearity& f = ctx.problem.f;

  RunRecord record;
  record.run_index = run_index;
  record.base_run_index = parent.base_run_index;
  record.p = parent.p;
  record.init_l2 = parent.init_l2;
  record.base_l2 = parent.base_l2;
  record.epsilon = parent.epsilon;
  record.base = parent.base;
  record.full_l2 = kInf;
  try {
    std::mt19937_64 glorot_gen = make_generator(
        derive_seed(settings.seed, seed_stream::glorot_init,
                    static_cast<std::uint64_t>(run_index)));
    MlpWeights theta0 = glorot_uniform_init(ctx.diff_spec, glorot_gen);
    TrainConfig diff_cfg = settings.diff_training;
    diff_cfg.seed = derive_seed(settings.seed, seed_stream::run_training,
                                2 * static_cast<std::uint64_t>(run_index) + 1);
    record.diff = train_difference(theta0, record.base, f, record.epsilon,
                                   ctx.data.train_inputs, ctx.data.train_targets,
                                   ctx.data.validation_inputs,
                                   ctx.data.validation_targets, diff_cfg);
    record.full_l2 = validation_l2(ctx, [&](const Matrix& x) {
      return full_model_eval(record.base, f, record.diff, record.epsilon, x);
    });
    record.ok = true;
    record.status = "ok";
  } catch (const std::exception& e) {
    record.ok = false;
    record.status = e.what();
  }
  record.training_seconds = elapsed_seconds(start);
  return record;
}

} // namespace

SweepResult grid_sweep(const SweepPlan& plan, const ProblemSpec& problem,
                       const DatasetSplits& data, const SweepSettings& settings) {
  if (plan.grid.empty()) throw std::invalid_argument("grid sweep needs grid points");
  PipelineContext ctx = make_context(problem, data, settings);
  SweepResult result;
  result.records.reserve(plan.grid.size());
  int run = 1;
  for (const LirkParams& p : plan.grid)
    result.records.push_back(execute_run(ctx, run++, p));
  return result;
}

SweepResult adaptive_sweep(const SweepPlan& plan, const ProblemSpec& problem,
                           const DatasetSplits& data, const SweepSettings& settings) {
  if (plan.runs < 1) throw std::invalid_argument("adaptive sweep needs at least one run");
  PipelineContext ctx = make_context(problem, data, settings);
  SweepResult result;
  result.records.reserve(plan.runs);

  for (int run = 1; run <= plan.runs; ++run) {
    // Exploit draw happens every run to keep the decision stream aligned.
    std::mt19937_64 decide_gen = make_generator(
        derive_seed(settings.seed, seed_stream::sweep_decision,
                    static_cast<std::uint64_t>(run)));
    double draw = std::uniform_real_distribution<double>(0.0, 1.0)(decide_gen);

    const RunRecord* best_base = nullptr;
    for (const RunRecord& r : result.records)
      if (r.ok && (!best_base || r.full_l2 < best_base->full_l2)) best_base = &r;

    bool exploit = run > 1 && best_base && draw < plan.exploit_probability;
    if (exploit) {
      result.records.push_back(execute_difference_only_run(ctx, run, *best_base));
    } else {
      std::mt19937_64 p_gen = make_generator(
          derive_seed(settings.seed, seed_stream::sweep_param,
                      static_cast<std::uint64_t>(run)));
      std::uniform_real_distribution<double> u1(plan.p1_range[0], plan.p1_range[1]);
      std::uniform_real_distribution<double> u2(plan.p2_range[0], plan.p2_range[1]);
      LirkParams p{u1(p_gen), u2(p_gen)};
      result.records.push_back(execute_run(ctx, run, p));
    }
  }
  return result;
}

Selection select_best_run(const std::vector<RunRecord>& records, const Nonlinearity& f,
                          const Matrix& selection_inputs,
                          const Matrix& selection_targets) {
  if (records.empty()) throw std::invalid_argument("no runs to select from");
  Selection best;
  best.index = 0;
  best.selection_l2 = kInf;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RunRecord& r = records[i];
    double loss = kInf;
    if (r.ok) {
      Matrix pred =
          full_model_eval(r.base, f, r.diff, r.epsilon, selection_inputs);
      Vector errors = column_seminorms(pred - selection_targets);
      loss = std::sqrt(errors.squaredNorm() / static_cast<double>(errors.size()));
    }
    if (loss < best.selection_l2) {
      best.selection_l2 = loss;
      best.index = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<HeatmapRow> heatmap_table(const SweepResult& result) {
  std::vector<HeatmapRow> rows;
  rows.reserve(result.records.size());
  for (const RunRecord& r : result.records)
    rows.push_back({r.p.p1, r.p.p2, r.init_l2, r.base_l2, r.full_l2, r.status});
  return rows;
}

} // namespace adann
