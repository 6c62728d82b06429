#pragma once

#include <cstdint>
#include <random>

namespace sqrtnuc {

/// Per-trial random stream. Everything that draws randomness takes one of
/// these by reference, so a trial is a pure function of its stream.
using RngStream = std::mt19937_64;

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Stream for trial `trial_index` of an experiment seeded with `master_seed`:
///   seed = mix64(mix64(master_seed) ^ mix64(trial_index + 0x9E3779B97F4A7C15))
/// The stream does not depend on how many trials run or in which order.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index);

}  // namespace sqrtnuc
