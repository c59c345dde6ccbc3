#pragma once

#include <cstdint>
#include <random>

namespace adann {

/// SplitMix64 finalizer. Used to derive independent sub-seeds from a master
/// seed so that sample k gets the same generator no matter how the work is
/// batched or distributed.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based seed split: (master, stream, index) -> sub-seed.
/// Streams keep unrelated consumers (samplers, batch order, init draws)
/// from colliding on the same generator state.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::uint64_t stream,
                                           std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream + 0x517cc1b727220a95ull)) ^ index);
}

inline std::mt19937_64 make_generator(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

namespace seed_stream {
inline constexpr std::uint64_t dataset_sample = 1;
inline constexpr std::uint64_t batch_order = 2;
inline constexpr std::uint64_t glorot_init = 3;
inline constexpr std::uint64_t sweep_param = 4;
inline constexpr std::uint64_t sweep_decision = 5;
inline constexpr std::uint64_t run_training = 6;
} // namespace seed_stream

} // namespace adann
