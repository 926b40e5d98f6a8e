#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace mcbound::oracle {

/// Two-level spectrum: s_a copies of phi_a and d - s_a copies of phi_x,
/// solving sum phi = 1 and sum phi^2 = P.
///
/// Candidates with phi_x < 0 are not spectra. Their objective is the limit of
/// the smoothed entropy as the smoothing scale goes to zero, which is +inf,
/// and they are flagged non-physical.
struct Candidate {
  std::size_t s_a = 1;
  double phi_a = 0.0;
  double phi_x = 0.0;
  double objective = 0.0;
  bool physical = true;
};

/// Requires d >= 3, P in (1/d, 1], 1 <= s_a <= d - 1.
Candidate candidate(std::size_t d, double P, std::size_t s_a);

/// All d - 1 candidates, ordered by s_a.
std::vector<Candidate> candidates(std::size_t d, double P);

/// Candidate of least objective among those with phi_x >= 0.
Candidate best_candidate(std::size_t d, double P);

/// Brute-force minimum of sum phi log2 phi over the manifold
/// {phi >= 0, sum phi = 1, sum phi^2 = P} for d in {3, 4}. The first d - 2
/// coordinates are swept over their feasible intervals with spacing at most
/// `resolution` (endpoints included); the last two solve the remaining
/// quadratic, keeping both roots when nonnegative.
double grid_oracle_min(std::size_t d, double P, double resolution);

/// Weaker check for larger d: `samples` random points on the same manifold
/// (each the crossing of the purity-P sphere by a random segment inside the
/// simplex, so every sample is nonnegative). Returns the least objective found and the
/// number of feasible samples.
std::pair<double, std::size_t> sampled_oracle_min(std::size_t d, double P,
                                                  std::size_t samples,
                                                  std::uint64_t seed);

/// The unique d = 2 spectrum with purity P in [1/2, 1].
std::pair<double, double> exact_d2(double P);

}  // namespace mcbound::oracle
