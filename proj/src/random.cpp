#include "sqrtnuc/random.hpp"

namespace sqrtnuc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
    const std::uint64_t seed = mix64(mix64(master_seed) ^ mix64(trial_index + 0x9E3779B97F4A7C15ULL));
    return RngStream(seed);
}

}  // namespace sqrtnuc
