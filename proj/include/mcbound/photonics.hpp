#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "mcbound/densmat.hpp"

namespace mcbound::photonics {

/// Two photons in correlated mode pairs: sum_m alpha_m a+_{+m} a+_{-m} |vac>.
class TwoPhotonState {
 public:
  explicit TwoPhotonState(std::vector<Complex> amplitudes, double tol = 1e-10);

  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }

 private:
  std::vector<Complex> amps_;
};

/// General two-photon state sum_ij alpha_ij a+_{+i} a+_{-j} |vac>, i.e. a
/// bipartite pure state with photon A in mode +i and photon B in mode -j.
/// A TwoPhotonState is the diagonal special case.
class BipartiteTwoPhotonState {
 public:
  explicit BipartiteTwoPhotonState(CMatrix amplitudes, double tol = 1e-10);
  explicit BipartiteTwoPhotonState(const TwoPhotonState& correlated);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.rows()); }
  const CMatrix& amplitudes() const noexcept { return amps_; }

 private:
  CMatrix amps_;
};

enum class Port : std::uint8_t { C, D };

struct Mode {
  Port port;
  int mode;  ///< signed mode label: +i for photon A's modes, -j for photon B's

  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Superposition of Fock states, keyed by the sorted multiset of occupied
/// (port, mode) slots. Values are amplitudes of the normalized Fock states.
class FockVector {
 public:
  using Key = std::vector<Mode>;

  const std::map<Key, Complex>& terms() const noexcept { return terms_; }
  double norm() const;

  /// Adds `coefficient` times the monomial prod_k c+_{key_k} |vac> (key in
  /// any order). Bosonic normalization is applied when converting to Fock
  /// amplitudes in finalize().
  void add_monomial(Key key, Complex coefficient);
  /// Converts accumulated monomial coefficients to Fock-state amplitudes by
  /// multiplying each by prod_slots sqrt(n!). Call once after all additions.
  void finalize();

  static std::size_t photons_in(const Key& key, Port port);

 private:
  std::map<Key, Complex> terms_;
  bool finalized_ = false;
};

/// Output of the 50:50 beamsplitter a+ -> (c+ + d+)/sqrt2, b+ -> (c+ - d+)/sqrt2
/// with `j` entering port a and `k` entering port b.
FockVector beamsplitter_output(const BipartiteTwoPhotonState& j,
                               const BipartiteTwoPhotonState& k);

/// |<phi_k|phi_j>|^2.
double parity_expectation_pure(const TwoPhotonState& j, const TwoPhotonState& k);

/// P(even) - P(odd) from the explicit four-photon output state. Even means an
/// even number of photons in each output port (4-0, 2-2, 0-4).
double fock_brute_force_parity(const TwoPhotonState& j, const TwoPhotonState& k);
double fock_brute_force_parity(const BipartiteTwoPhotonState& j,
                               const BipartiteTwoPhotonState& k);

/// sum_jk psi_j phi_k |<phi_k|psi_j>|^2 over the eigendecompositions of two
/// states supported on the correlated |k,k> subspace. Throws InputError when
/// either state has more than `support_tol` population outside it.
double parity_expectation_mixed(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                double support_tol = 1e-9);

/// Same mixture sum over eigendecompositions, for arbitrary two-photon states
/// on the full d^2 space.
double parity_expectation_two_photon(const DensityMatrix& rho1, const DensityMatrix& rho2);

struct ParityCounts {
  std::uint64_t even = 0;
  std::uint64_t odd = 0;
};

/// Binomial sampling with p(even) = (1 + <parity>) / 2 for two copies of rho.
/// States on the correlated subspace use parity_expectation_mixed; anything
/// else uses parity_expectation_two_photon.
ParityCounts simulate_parity_counts(const DensityMatrix& rho, std::uint64_t shots,
                                    std::uint64_t seed);

/// Multinomial sample over the d^2 populations <i,j|rho|i,j>; row-major d x d.
std::vector<std::uint64_t> simulate_coincidence_counts(const DensityMatrix& rho,
                                                       std::uint64_t shots,
                                                       std::uint64_t seed);

}  // namespace mcbound::photonics
