#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "adann/container.hpp"
#include "adann/problems.hpp"
#include "adann/types.hpp"

namespace adann {

/// Pre-drawn training data: fine-grid initial samples paired with
/// coarse-grid reference terminal values. Samples are stored as columns;
/// the on-disk layout is (samples x dimension). The recorded metadata
/// pins everything needed to regenerate the file bit-exactly.
struct Dataset {
  std::string problem;
  std::uint64_t seed = 0;
  InitialLaw law;
  ReferenceSolver reference;
  Matrix inputs;  // fine dimension x n
  Matrix targets; // coarse dimension x n

  long size() const { return inputs.cols(); }
};

/// Draws n i.i.d. samples and solves each with the reference integrator.
/// Sample k derives its generator from (seed, k), so content is independent
/// of batching and worker count.
Dataset generate_dataset(const ProblemSpec& problem, const InitialLaw& law,
                         const ReferenceSolver& reference, long n, std::uint64_t seed,
                         int workers = 0);

struct SplitFractions {
  double train = 0.75;
  double validation = 0.125;
  double selection = 0.0625;
  double test = 0.0625;
};

/// Contiguous disjoint slices (train, validation, selection, test) in
/// generation order. Fractions must sum to 1.
struct DatasetSplits {
  Matrix train_inputs, train_targets;
  Matrix validation_inputs, validation_targets;
  Matrix selection_inputs, selection_targets;
  Matrix test_inputs, test_targets;
};

DatasetSplits split_dataset(const Dataset& dataset, const SplitFractions& fractions);

void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

} // namespace adann
