#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mcbound {

using Rng = std::mt19937_64;

/// One multinomial draw of `n` trials, via sequential conditional binomials.
/// Probabilities need not be normalized; negative entries are treated as 0.
std::vector<std::uint64_t> sample_multinomial(std::span<const double> probs,
                                              std::uint64_t n, Rng& rng);

std::uint64_t sample_binomial(std::uint64_t n, double p, Rng& rng);

}  // namespace mcbound
