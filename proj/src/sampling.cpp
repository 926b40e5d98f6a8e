#include "mcbound/sampling.hpp"

#include <algorithm>

namespace mcbound {

std::uint64_t sample_binomial(std::uint64_t n, double p, Rng& rng) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(rng);
}

std::vector<std::uint64_t> sample_multinomial(std::span<const double> probs,
                                              std::uint64_t n, Rng& rng) {
  std::vector<std::uint64_t> out(probs.size(), 0);
  std::size_t last = probs.size();
  double remaining_mass = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) {
      remaining_mass += probs[k];
      last = k;
    }
  }
  if (last == probs.size()) return out;

  std::uint64_t remaining = n;
  for (std::size_t k = 0; k < last && remaining > 0; ++k) {
    if (probs[k] <= 0.0) continue;
    const double cond = std::min(1.0, probs[k] / remaining_mass);
    out[k] = sample_binomial(remaining, cond, rng);
    remaining -= out[k];
    remaining_mass -= probs[k];
  }
  // The last outcome with positive weight absorbs the rest; this also keeps
  // zero-probability outcomes at exactly zero counts.
  out[last] += remaining;
  return out;
}

}  // namespace mcbound
