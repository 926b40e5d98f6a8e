#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mcbound/counts.hpp"
#include "mcbound/densmat.hpp"
#include "mcbound/numeric_policy.hpp"

namespace mcbound {

// Noise attached to the maximally correlated component.
struct NoiseFree {};
struct WhiteNoise {};
struct IncoherentNoise {
  std::vector<double> lambda;  ///< d(d-1) probabilities, lexicographic (i,j), i != j
};
using NoiseModel = std::variant<NoiseFree, WhiteNoise, IncoherentNoise>;

std::string noise_model_name(const NoiseModel& model);

/// How estimate_params_from_counts picks the noise model. Auto declares a
/// noise-free state when q/total <= mc_threshold and white noise otherwise.
enum class NoiseModelChoice { Auto, None, White, Incoherent };

NoiseModelChoice parse_noise_model_choice(const std::string& name);
std::string to_string(NoiseModelChoice choice);

struct CertificationInput {
  std::size_t d = 0;
  std::vector<double> zeta;  ///< normalized correlated populations
  double gamma = 1.0;
  NoiseModel noise_model = NoiseFree{};
  std::optional<double> purity_total;  ///< measured Tr(rho^2), if a parity tally exists
  double q = 0.0;                      ///< uncorrelated fraction of all coincidences
};

struct CertificationDiagnostics {
  /// Whether the entropy-minimizing spectrum (phi_a, phi_x, ..., phi_x)
  /// majorizes zeta. When false the bound ignores available information and
  /// may be loose; it is still valid.
  bool extremal_spectrum_majorizes_zeta = true;
  double phi_a = 1.0;
  double phi_x = 0.0;
};

struct CertificationReport {
  std::size_t d = 0;
  double purity_mc = 1.0;
  double neg_entropy_bound = 0.0;
  double ree_lower_bound = 0.0;
  std::size_t d_star = 1;
  double mutual_info_lower_bound = 0.0;
  CertificationDiagnostics diagnostics;
  Notices warnings;
};

/// Lower bound on sum_k phi_k log2 phi_k over spectra with at most K nonzero
/// entries, unit sum and purity P:
///   phi_a log2 phi_a + (1 - phi_a) log2((1 - phi_a) / (K - 1)),
///   phi_a = (1 + sqrt((K P - 1)(K - 1))) / K.
/// P within policy.clamp_tol of [1/K, 1] is clamped (with a notice); beyond
/// that InputError.
double neg_entropy_lower_bound(std::size_t K, double P,
                               const NumericPolicy& policy = {},
                               Notices* notices = nullptr);

/// The largest eigenvalue of the minimizing spectrum, after the same clamping.
double extremal_phi_a(std::size_t K, double P, const NumericPolicy& policy = {});

/// neg_entropy_lower_bound(d, P_mc) + H(zeta).
double ree_lower_bound_mc(std::span<const double> zeta, double P_mc,
                          const NumericPolicy& policy = {},
                          Notices* notices = nullptr);

/// Exact relative entropy of entanglement of a maximally correlated state:
/// sum phi log2 phi - sum zeta log2 zeta.
double ree_exact_mc(const DensityMatrix& rho_mc, const NumericPolicy& policy = {});

/// gamma * ree_lower_bound_mc + gamma log2 gamma + (1-gamma) log2 (1-gamma).
double ree_lower_bound_noisy(std::span<const double> zeta, double gamma,
                             double P_mc, const NumericPolicy& policy = {},
                             Notices* notices = nullptr);

/// Converts the purity of the noisy state to the purity of its maximally
/// correlated component:
///   P_mc = (P_total - (1-gamma)^2 sum lambda^2) / gamma^2.
/// Clamped into [1/d, 1] with a notice when within policy.clamp_tol, else
/// PhysicsError.
double purity_mc_from_total(double P_total, double gamma, const NoiseModel& model,
                            std::size_t d, const NumericPolicy& policy = {},
                            Notices* notices = nullptr);

CertificationInput estimate_params_from_counts(const CountsRecord& counts,
                                               NoiseModelChoice choice,
                                               const NumericPolicy& policy = {},
                                               Notices* notices = nullptr);

/// ceil(2^D), at least 1. Negative D is treated as 0 with a notice.
std::size_t entanglement_dim_lower_bound(double D, const NumericPolicy& policy = {},
                                         Notices* notices = nullptr);

/// -2 sum zeta log2 zeta + neg_entropy_lower_bound(d, P_mc).
double mutual_info_lower_bound_mc(std::span<const double> zeta, double P_mc,
                                  const NumericPolicy& policy = {},
                                  Notices* notices = nullptr);

/// Number of populations above tol; bounds the rank of the state.
std::size_t rank_upper_bound_from_diag(std::span<const double> diag_probs,
                                       double tol);

/// Full certification of an estimated parameter set. Requires purity_total.
CertificationReport certify(const CertificationInput& input,
                            const NumericPolicy& policy = {});

/// Nonparametric bootstrap over the raw counts: coincidences are resampled
/// multinomially and the parity tally binomially from their empirical
/// frequencies, and the whole certification is rerun on each replicate.
struct BootstrapSummary {
  std::size_t resamples = 0;
  std::size_t failures = 0;  ///< replicates that raised an error
  double ree_mean = 0.0;
  double ree_std = 0.0;
  double ree_p05 = 0.0;
  double ree_p95 = 0.0;
  double purity_mc_mean = 0.0;
  double purity_mc_std = 0.0;
};

BootstrapSummary bootstrap_certification(const CountsRecord& counts,
                                         NoiseModelChoice choice,
                                         std::size_t resamples, std::uint64_t seed,
                                         const NumericPolicy& policy = {});

}  // namespace mcbound
