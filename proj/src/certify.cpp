#include "mcbound/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mcbound/errors.hpp"
#include "mcbound/sampling.hpp"

namespace mcbound {

namespace {

// Roundoff slack below which clamping is silent.
constexpr double kSilentClamp = 1e-12;

void note(Notices* notices, std::string code, std::string message) {
  if (notices) notices->push_back({std::move(code), std::move(message)});
}

// Clamps P into [lo, 1] under the policy; returns the clamped value.
double clamp_purity(double P, double lo, const NumericPolicy& policy,
                    Notices* notices, const char* what, bool physics_error) {
  if (!std::isfinite(P)) throw InputError(std::string(what) + ": purity is not finite");
  const double below = lo - P;
  const double above = P - 1.0;
  const double excess = std::max(below, above);
  if (excess <= 0.0) return P;
  if (excess > policy.clamp_tol) {
    std::ostringstream os;
    os << what << ": purity " << P << " lies outside [" << lo << ", 1] by more than "
       << policy.clamp_tol;
    if (physics_error) throw PhysicsError(os.str());
    throw InputError(os.str());
  }
  const double clamped = std::clamp(P, lo, 1.0);
  if (excess > kSilentClamp) {
    std::ostringstream os;
    os << what << ": purity " << P << " clamped to " << clamped;
    note(notices, "purity_clamped", os.str());
  }
  return clamped;
}

void validate_zeta(std::span<const double> zeta, const NumericPolicy& policy) {
  if (zeta.size() < 2) throw InputError("zeta must have length d >= 2");
  double total = 0.0;
  for (double z : zeta) {
    if (!std::isfinite(z) || z < 0.0) throw InputError("zeta entries must be >= 0");
    total += z;
  }
  if (std::abs(total - 1.0) > policy.sum_tol) {
    std::ostringstream os;
    os << "zeta sums to " << total << ", expected 1";
    throw InputError(os.str());
  }
}

void validate_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    std::ostringstream os;
    os << "gamma = " << gamma << " must lie in (0, 1]; there is no maximally correlated component";
    throw PhysicsError(os.str());
  }
}

double binary_mixing_term(double gamma) {
  return xlog2x(gamma) + xlog2x(1.0 - gamma);
}

}  // namespace

std::string noise_model_name(const NoiseModel& model) {
  struct {
    std::string operator()(const NoiseFree&) const { return "none"; }
    std::string operator()(const WhiteNoise&) const { return "white"; }
    std::string operator()(const IncoherentNoise&) const { return "incoherent"; }
  } visitor;
  return std::visit(visitor, model);
}

NoiseModelChoice parse_noise_model_choice(const std::string& name) {
  if (name == "auto") return NoiseModelChoice::Auto;
  if (name == "none") return NoiseModelChoice::None;
  if (name == "white") return NoiseModelChoice::White;
  if (name == "incoherent") return NoiseModelChoice::Incoherent;
  throw InputError("unknown noise model '" + name + "'");
}

std::string to_string(NoiseModelChoice choice) {
  switch (choice) {
    case NoiseModelChoice::Auto: return "auto";
    case NoiseModelChoice::None: return "none";
    case NoiseModelChoice::White: return "white";
    case NoiseModelChoice::Incoherent: return "incoherent";
  }
  return "auto";
}

double extremal_phi_a(std::size_t K, double P, const NumericPolicy& policy) {
  if (K == 0) throw InputError("neg_entropy_lower_bound: K must be >= 1");
  if (K == 1) return 1.0;
  const double k = static_cast<double>(K);
  P = clamp_purity(P, 1.0 / k, policy, nullptr, "neg_entropy_lower_bound", false);
  const double radicand = std::max(0.0, (k * P - 1.0) * (k - 1.0));
  return std::min(1.0, (1.0 + std::sqrt(radicand)) / k);
}

double neg_entropy_lower_bound(std::size_t K, double P, const NumericPolicy& policy,
                               Notices* notices) {
  if (K == 0) throw InputError("neg_entropy_lower_bound: K must be >= 1");
  const double k = static_cast<double>(K);
  // Report clamping once; extremal_phi_a repeats it silently.
  clamp_purity(P, 1.0 / k, policy, notices, "neg_entropy_lower_bound", false);
  if (K == 1) return 0.0;
  const double phi_a = extremal_phi_a(K, P, policy);
  const double rest = 1.0 - phi_a;
  const double tail = rest > 0.0 ? rest * std::log2(rest / (k - 1.0)) : 0.0;
  return xlog2x(phi_a) + tail;
}

double ree_lower_bound_mc(std::span<const double> zeta, double P_mc,
                          const NumericPolicy& policy, Notices* notices) {
  validate_zeta(zeta, policy);
  return neg_entropy_lower_bound(zeta.size(), P_mc, policy, notices) +
         shannon_entropy(zeta);
}

double ree_exact_mc(const DensityMatrix& rho_mc, const NumericPolicy& policy) {
  if (!is_maximally_correlated(rho_mc, policy.psd_tol)) {
    throw InputError("ree_exact_mc: state is not maximally correlated");
  }
  const auto spec = eigenvalues(rho_mc, policy);
  const auto prof = correlation_profile(rho_mc);
  double neg_s = 0.0;
  for (double v : spec.values) neg_s += xlog2x(v);
  return neg_s + shannon_entropy(prof.zeta);
}

double ree_lower_bound_noisy(std::span<const double> zeta, double gamma, double P_mc,
                             const NumericPolicy& policy, Notices* notices) {
  validate_gamma(gamma);
  const double inner = ree_lower_bound_mc(zeta, P_mc, policy, notices);
  if (gamma == 1.0) return inner;
  return gamma * inner + binary_mixing_term(gamma);
}

double purity_mc_from_total(double P_total, double gamma, const NoiseModel& model,
                            std::size_t d, const NumericPolicy& policy,
                            Notices* notices) {
  validate_gamma(gamma);
  if (d < 2) throw InputError("purity_mc_from_total: d must be >= 2");
  if (!(P_total > 0.0 && P_total <= 1.0 + policy.clamp_tol)) {
    std::ostringstream os;
    os << "purity_mc_from_total: measured purity " << P_total << " is not in (0, 1]";
    throw PhysicsError(os.str());
  }
  const double dd = static_cast<double>(d);
  double lambda_sq = 0.0;
  if (std::holds_alternative<NoiseFree>(model)) {
    if (gamma != 1.0) throw InputError("noise-free model requires gamma = 1");
  } else if (std::holds_alternative<WhiteNoise>(model)) {
    lambda_sq = 1.0 / (dd * (dd - 1.0));
  } else {
    const auto& lambda = std::get<IncoherentNoise>(model).lambda;
    if (lambda.size() != d * (d - 1)) {
      throw InputError("purity_mc_from_total: incoherent lambda must have d(d-1) entries");
    }
    for (double l : lambda) lambda_sq += l * l;
  }
  const double noise = (1.0 - gamma) * (1.0 - gamma) * lambda_sq;
  const double raw = (P_total - noise) / (gamma * gamma);
  return clamp_purity(raw, 1.0 / dd, policy, notices, "purity_mc_from_total", true);
}

CertificationInput estimate_params_from_counts(const CountsRecord& counts,
                                               NoiseModelChoice choice,
                                               const NumericPolicy& policy,
                                               Notices* notices) {
  counts.validate();
  const std::size_t d = counts.d;
  const std::uint64_t corr = counts.correlated_total();
  const std::uint64_t uncorr = counts.uncorrelated_total();
  const std::uint64_t total = corr + uncorr;
  if (total == 0) throw InputError("counts: no coincidences recorded");
  if (corr == 0) {
    throw PhysicsError("counts: no correlated coincidences (gamma = 0); nothing to certify");
  }

  CertificationInput in;
  in.d = d;
  in.zeta.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    in.zeta[k] = static_cast<double>(counts.at(k, k)) / static_cast<double>(corr);
  }
  in.q = static_cast<double>(uncorr) / static_cast<double>(total);
  const double gamma = static_cast<double>(corr) / static_cast<double>(total);
  if (counts.parity.shots() > 0) {
    const auto even = static_cast<double>(counts.parity.even);
    const auto odd = static_cast<double>(counts.parity.odd);
    in.purity_total = (even - odd) / (even + odd);
  }

  NoiseModelChoice effective = choice;
  if (choice == NoiseModelChoice::Auto) {
    effective = in.q <= policy.mc_threshold ? NoiseModelChoice::None
                                            : NoiseModelChoice::White;
    std::ostringstream os;
    os << "q = " << in.q << (effective == NoiseModelChoice::None ? " <= " : " > ")
       << "mc_threshold " << policy.mc_threshold << "; using noise model "
       << to_string(effective);
    note(notices, "noise_model_auto", os.str());
  }
  if (effective == NoiseModelChoice::Incoherent && uncorr == 0) {
    note(notices, "incoherent_without_noise",
         "incoherent model requested but no uncorrelated counts; treating as noise-free");
    effective = NoiseModelChoice::None;
  }

  switch (effective) {
    case NoiseModelChoice::None:
      if (uncorr > 0) {
        std::ostringstream os;
        os << "treating state as maximally correlated; uncorrelated fraction q = "
           << in.q << " is ignored";
        note(notices, "noise_ignored", os.str());
      }
      in.gamma = 1.0;
      in.noise_model = NoiseFree{};
      break;
    case NoiseModelChoice::White:
      in.gamma = gamma;
      in.noise_model = WhiteNoise{};
      break;
    case NoiseModelChoice::Incoherent: {
      IncoherentNoise noise;
      noise.lambda.reserve(d * (d - 1));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          if (i != j) {
            noise.lambda.push_back(static_cast<double>(counts.at(i, j)) /
                                   static_cast<double>(uncorr));
          }
        }
      }
      in.gamma = gamma;
      in.noise_model = std::move(noise);
      break;
    }
    case NoiseModelChoice::Auto:
      break;
  }
  return in;
}

std::size_t entanglement_dim_lower_bound(double D, const NumericPolicy& policy,
                                         Notices* notices) {
  if (!std::isfinite(D)) throw InputError("entanglement_dim_lower_bound: D is not finite");
  if (D < 0.0) {
    std::ostringstream os;
    os << "entanglement bound D = " << D << " is negative; d* bound is vacuous";
    note(notices, "negative_bound", os.str());
    D = 0.0;
  }
  // dstar_tol keeps a bound like log2(3) + 1ulp from rounding up to 4.
  const double v = std::ceil(std::exp2(D) - policy.dstar_tol);
  return std::max<std::size_t>(1, static_cast<std::size_t>(v));
}

double mutual_info_lower_bound_mc(std::span<const double> zeta, double P_mc,
                                  const NumericPolicy& policy, Notices* notices) {
  validate_zeta(zeta, policy);
  return 2.0 * shannon_entropy(zeta) +
         neg_entropy_lower_bound(zeta.size(), P_mc, policy, notices);
}

std::size_t rank_upper_bound_from_diag(std::span<const double> diag_probs, double tol) {
  return static_cast<std::size_t>(std::count_if(
      diag_probs.begin(), diag_probs.end(), [tol](double p) { return p > tol; }));
}

CertificationReport certify(const CertificationInput& input, const NumericPolicy& policy) {
  if (!input.purity_total) {
    throw InputError("certify: no purity measurement (parity tally is empty)");
  }
  if (input.zeta.size() != input.d) throw InputError("certify: zeta length differs from d");

  CertificationReport rep;
  rep.d = input.d;
  Notices& w = rep.warnings;

  rep.purity_mc = purity_mc_from_total(*input.purity_total, input.gamma, input.noise_model,
                                       input.d, policy, &w);
  rep.neg_entropy_bound = neg_entropy_lower_bound(input.d, rep.purity_mc, policy, &w);
  const bool noisy = !std::holds_alternative<NoiseFree>(input.noise_model);
  rep.ree_lower_bound = noisy ? ree_lower_bound_noisy(input.zeta, input.gamma,
                                                      rep.purity_mc, policy)
                              : ree_lower_bound_mc(input.zeta, rep.purity_mc, policy);
  rep.d_star = entanglement_dim_lower_bound(rep.ree_lower_bound, policy, &w);
  rep.mutual_info_lower_bound = mutual_info_lower_bound_mc(input.zeta, rep.purity_mc, policy);

  const double phi_a = extremal_phi_a(input.d, rep.purity_mc, policy);
  const double phi_x = (1.0 - phi_a) / static_cast<double>(input.d - 1);
  std::vector<double> extremal(input.d, phi_x);
  extremal[0] = phi_a;
  rep.diagnostics.phi_a = phi_a;
  rep.diagnostics.phi_x = phi_x;
  rep.diagnostics.extremal_spectrum_majorizes_zeta =
      majorizes(extremal, input.zeta, policy.sum_tol);
  if (!rep.diagnostics.extremal_spectrum_majorizes_zeta) {
    w.push_back({"majorization_unused",
                 "the entropy-minimizing spectrum does not majorize zeta; the bound "
                 "is valid but may be loose"});
  }
  if (noisy) {
    w.push_back({"noise_model_assumption",
                 "bound assumes all correlated-population mass belongs to the maximally "
                 "correlated component and noise of the '" +
                     noise_model_name(input.noise_model) + "' form"});
    w.push_back({"mutual_info_mc_component",
                 "mutual_info_lower_bound refers to the maximally correlated component"});
  }
  return rep;
}

BootstrapSummary bootstrap_certification(const CountsRecord& counts,
                                         NoiseModelChoice choice, std::size_t resamples,
                                         std::uint64_t seed, const NumericPolicy& policy) {
  counts.validate();
  BootstrapSummary out;
  out.resamples = resamples;
  if (resamples == 0) return out;

  const std::uint64_t total = counts.total();
  std::vector<double> freq(counts.coincidences.size());
  for (std::size_t k = 0; k < freq.size(); ++k) {
    freq[k] = total ? static_cast<double>(counts.coincidences[k]) / static_cast<double>(total)
                    : 0.0;
  }
  const std::uint64_t shots = counts.parity.shots();
  const double p_even =
      shots ? static_cast<double>(counts.parity.even) / static_cast<double>(shots) : 0.0;

  Rng rng(seed);
  std::vector<double> ree;
  std::vector<double> pmc;
  for (std::size_t r = 0; r < resamples; ++r) {
    CountsRecord replicate = counts;
    replicate.coincidences = sample_multinomial(freq, total, rng);
    replicate.parity.even = sample_binomial(shots, p_even, rng);
    replicate.parity.odd = shots - replicate.parity.even;
    try {
      const auto report = certify(estimate_params_from_counts(replicate, choice, policy), policy);
      ree.push_back(report.ree_lower_bound);
      pmc.push_back(report.purity_mc);
    } catch (const Error&) {
      ++out.failures;
    }
  }
  if (ree.empty()) return out;

  auto mean_std = [](const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair{mean, v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
  };
  std::tie(out.ree_mean, out.ree_std) = mean_std(ree);
  std::tie(out.purity_mc_mean, out.purity_mc_std) = mean_std(pmc);
  std::sort(ree.begin(), ree.end());
  auto quantile = [&ree](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(ree.size() - 1)));
    return ree[idx];
  };
  out.ree_p05 = quantile(0.05);
  out.ree_p95 = quantile(0.95);
  return out;
}

}  // namespace mcbound
