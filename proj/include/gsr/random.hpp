#pragma once

#include <cstdint>
#include <random>

namespace gsr {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index), e.g. one per Monte-Carlo trial.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace gsr
