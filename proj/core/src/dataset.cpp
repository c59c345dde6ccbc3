#include "adann/dataset.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "adann/parallel.hpp"
#include "adann/rng.hpp"

namespace adann {

namespace {
// Reference solves run in fixed 512-sample chunks keyed to absolute sample
// indices, so the generated bytes do not depend on the worker count.
constexpr long kChunk = 512;
} // namespace

Dataset generate_dataset(const ProblemSpec& problem, const InitialLaw& law,
                         const ReferenceSolver& reference, long n, std::uint64_t seed,
                         int workers) {
  if (n < 1) throw std::invalid_argument("dataset needs at least one sample");

  InitialSampler sampler(problem, reference, law);
  ReferenceIntegrator integrator(problem, reference);

  Dataset dataset;
  dataset.problem = problem.name;
  dataset.seed = seed;
  dataset.law = law;
  dataset.reference = reference;
  dataset.inputs.resize(sampler.fine_dimension(), n);
  dataset.targets.resize(integrator.coarse_dimension(), n);

  std::mutex error_mutex;
  std::string first_error;
  auto record_error = [&](const std::string& message) {
    std::lock_guard<std::mutex> lock(error_mutex);
    if (first_error.empty()) first_error = message;
  };

  parallel_for(n, workers, [&](long begin, long end) {
    try {
      for (long k = begin; k < end; ++k)
        dataset.inputs.col(k) =
            sampler.sample(derive_seed(seed, seed_stream::dataset_sample,
                                       static_cast<std::uint64_t>(k)));
    } catch (const std::exception& e) {
      record_error(std::string("sampling failed near sample ") +
                   std::to_string(begin) + ": " + e.what());
    }
  });
  if (!first_error.empty()) throw std::runtime_error(first_error);

  long chunks = (n + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](long begin, long end) {
    try {
      for (long c = begin; c < end; ++c) {
        long lo = c * kChunk;
        long width = std::min(kChunk, n - lo);
        dataset.targets.middleCols(lo, width) =
            integrator.solve(dataset.inputs.middleCols(lo, width));
      }
    } catch (const std::exception& e) {
      record_error(std::string("reference solve failed in samples [") +
                   std::to_string(begin * kChunk) + ", ...): " + e.what());
    }
  });
  if (!first_error.empty()) throw std::runtime_error(first_error);

  return dataset;
}

DatasetSplits split_dataset(const Dataset& dataset, const SplitFractions& fractions) {
  double sum =
      fractions.train + fractions.validation + fractions.selection + fractions.test;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");

  long n = dataset.size();
  std::array<double, 4> f = {fractions.train, fractions.validation,
                             fractions.selection, fractions.test};
  std::array<long, 5> bounds{};
  double cumulative = 0.0;
  bounds[0] = 0;
  for (int i = 0; i < 3; ++i) {
    cumulative += f[i];
    bounds[i + 1] = static_cast<long>(std::llround(cumulative * n));
  }
  bounds[4] = n;

  auto slice = [&](int i, const Matrix& m) {
    return Matrix(m.middleCols(bounds[i], bounds[i + 1] - bounds[i]));
  };
  DatasetSplits splits;
  splits.train_inputs = slice(0, dataset.inputs);
  splits.train_targets = slice(0, dataset.targets);
  splits.validation_inputs = slice(1, dataset.inputs);
  splits.validation_targets = slice(1, dataset.targets);
  splits.selection_inputs = slice(2, dataset.inputs);
  splits.selection_targets = slice(2, dataset.targets);
  splits.test_inputs = slice(3, dataset.inputs);
  splits.test_targets = slice(3, dataset.targets);
  return splits;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  Container c;
  c.add_samples("inputs", dataset.inputs);
  c.add_samples("targets", dataset.targets);
  c.set_meta("problem", dataset.problem);
  c.set_meta_int("seed", static_cast<long long>(dataset.seed));
  c.set_meta("law", dataset.law.name());
  c.set_meta_int("law_modes", dataset.law.modes);
  c.set_meta_int("law_shared_fourier", dataset.law.shared_fourier_coeffs ? 1 : 0);
  c.set_meta_int("fine_factor", dataset.reference.fine_factor);
  c.set_meta_int("fine_steps", dataset.reference.fine_steps);
  c.save(path);
}

Dataset load_dataset(const std::filesystem::path& path) {
  Container c = Container::load(path);
  Dataset dataset;
  dataset.inputs = c.samples("inputs");
  dataset.targets = c.samples("targets");
  dataset.problem = c.meta_string("problem");
  dataset.seed = static_cast<std::uint64_t>(c.meta_int("seed"));
  std::string law = c.meta_string("law");
  if (law == "sine_decay")
    dataset.law.kind = InitialLaw::Kind::sine_decay;
  else if (law == "fourier_decay")
    dataset.law.kind = InitialLaw::Kind::fourier_decay;
  else if (law == "grf2d")
    dataset.law.kind = InitialLaw::Kind::grf2d;
  else
    throw std::runtime_error("unknown initial law in dataset: " + law);
  dataset.law.modes = static_cast<int>(c.meta_int("law_modes"));
  dataset.law.shared_fourier_coeffs = c.meta_int("law_shared_fourier") != 0;
  dataset.reference.fine_factor = static_cast<int>(c.meta_int("fine_factor"));
  dataset.reference.fine_steps = static_cast<int>(c.meta_int("fine_steps"));
  return dataset;
}

} // namespace adann
