#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adann/dataset.hpp"
#include "adann/training.hpp"

namespace adann {

/// Sweep over base-model initializations: either an explicit grid of LIRK
/// parameters, or repeated runs with random parameters and the adaptive
/// new-base-vs-new-difference rule.
struct SweepPlan {
  enum class Mode { grid, adaptive_random };
  Mode mode = Mode::grid;
  std::vector<LirkParams> grid;

  std::array<double, 2> p1_range = {0.1, 0.9};
  std::array<double, 2> p2_range = {0.3, 0.9};
  int runs = 1;
  double exploit_probability = 0.5;

  /// Cartesian grid from the two axis lists.
  static std::vector<LirkParams> cartesian(const std::vector<double>& p1,
                                           const std::vector<double>& p2);
  /// The section-4 preset grids (rd1d 9x7, sg1d 5x4, heat2d 9x8).
  static SweepPlan grid_preset(const std::string& problem);
  static SweepPlan adaptive_preset(const std::string& problem, int runs);
};

/// How many LIRK blocks the base model uses per problem (rd1d 5, sg1d 15,
/// heat2d 2).
int base_depth_for(const std::string& problem);

/// Difference-model hidden layout per problem; the 1D Sine-Gordon and the
/// 2D problem substitute plain MLPs for the paper-external operator nets.
MlpSpec difference_spec_for(const std::string& problem, long coarse_dim);

/// Plain baseline network layout per problem.
MlpSpec baseline_ann_spec_for(const std::string& problem, long coarse_dim);

struct SweepSettings {
  TrainConfig base_training;
  TrainConfig diff_training;
  long error_scale_samples = 2048; // Monte-Carlo budget for eps
  std::uint64_t seed = 0;
};

/// Result of one run: initialization, trained weights, error scale and the
/// validation errors of each model stage.
struct RunRecord {
  int run_index = 0;
  LirkParams p;
  double init_l2 = 0.0;
  double base_l2 = 0.0;
  double full_l2 = 0.0;
  double epsilon = 0.0;
  bool ok = false;
  std::string status;
  int base_run_index = 0; // (B) runs attach to an earlier base
  double training_seconds = 0.0;
  BaseWeights base;
  MlpWeights diff;
};

struct SweepResult {
  std::vector<RunRecord> records;
};

/// Grid sweep: full pipeline (init, train base, estimate eps, train
/// difference) per grid point. Individual failures are recorded and the
/// sweep continues.
SweepResult grid_sweep(const SweepPlan& plan, const ProblemSpec& problem,
                       const DatasetSplits& data, const SweepSettings& settings);

/// Adaptive sweep: run 1 always trains a fresh base; later runs either
/// sample a new base (A) or attach a fresh difference model to the best
/// existing base (B), decided by a seeded exploit draw.
SweepResult adaptive_sweep(const SweepPlan& plan, const ProblemSpec& problem,
                           const DatasetSplits& data, const SweepSettings& settings);

/// Picks the run whose full model has the smallest estimated expected loss
/// on held-out selection data; ties break to the lowest run index.
/// Returns that loss too.
struct Selection {
  int index = 0; // into records
  double selection_l2 = 0.0;
};
Selection select_best_run(const std::vector<RunRecord>& records,
                          const Nonlinearity& f, const Matrix& selection_inputs,
                          const Matrix& selection_targets);

/// One row per grid point: p and the three validation L2 errors.
struct HeatmapRow {
  double p1, p2;
  double init_l2, base_l2, full_l2;
  std::string status;
};
std::vector<HeatmapRow> heatmap_table(const SweepResult& result);

} // namespace adann
