#pragma once

// Shared helpers for the test binaries: seeded random states and the
// statistical envelope of a certified bound.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "mcbound/certify.hpp"
#include "mcbound/densmat.hpp"
#include "mcbound/sampling.hpp"

namespace testsupport {

using mcbound::CMatrix;
using mcbound::Complex;

inline Complex gaussian_complex(mcbound::Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

/// G G^dagger / Tr with G an n x k complex Gaussian matrix; k sets the rank.
inline CMatrix ginibre(std::size_t n, std::size_t k, mcbound::Rng& rng) {
  CMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = gaussian_complex(rng);
  }
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  // Exact Hermiticity, so validation sees only genuine errors.
  return (m + m.adjoint()) * 0.5;
}

/// Random full-space density matrix on C^d (x) C^d.
inline mcbound::DensityMatrix random_density(std::size_t d, mcbound::Rng& rng) {
  std::uniform_int_distribution<std::size_t> rank(1, d * d);
  return mcbound::DensityMatrix(d, ginibre(d * d, rank(rng), rng));
}

/// Random alpha block of a maximally correlated state, random rank 1..d.
inline CMatrix random_alpha(std::size_t d, mcbound::Rng& rng) {
  std::uniform_int_distribution<std::size_t> rank(1, d);
  return ginibre(d, rank(rng), rng);
}

inline mcbound::DensityMatrix random_mc_state(std::size_t d, mcbound::Rng& rng) {
  return mcbound::make_mc_state(random_alpha(d, rng));
}

/// Normalized complex Gaussian vector.
inline std::vector<Complex> random_amplitudes(std::size_t d, mcbound::Rng& rng) {
  std::vector<Complex> v(d);
  double norm = 0.0;
  for (auto& x : v) {
    x = gaussian_complex(rng);
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

/// Random probability vector of length n (flat Dirichlet).
inline std::vector<double> random_simplex(std::size_t n, mcbound::Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) s += (x = e(rng));
  for (auto& x : v) x /= s;
  return v;
}

inline double binary_terms(double gamma) {
  return mcbound::xlog2x(gamma) + mcbound::xlog2x(1.0 - gamma);
}

struct Envelope {
  double lo;
  double hi;
};

/// Range of the white-noise certified bound when the measured gamma, purity
/// and zeta move by up to `k` standard deviations from their true values.
/// gamma and purity are binomial estimates over `shots` trials; zeta entries
/// are multinomial over the correlated subset. The bound is nondecreasing in
/// the purity, so purity corners suffice; gamma is swept on a grid because the
/// bound is not monotone in it. The entropy term uses a first-order slope
/// plus the second-order curvature term on the low side.
inline Envelope white_noise_envelope(std::vector<double> zeta, double gamma,
                                     double purity_total, double shots, double k = 3.0) {
  const std::size_t d = zeta.size();
  const double h = mcbound::shannon_entropy(zeta);
  double slope = 0.0;
  double curvature = 0.0;
  for (double z : zeta) {
    if (z <= 0.0) continue;
    const double s = k * std::sqrt(z * (1.0 - z) / (std::max(gamma, 1e-12) * shots));
    slope += std::abs(std::log2(z) + 1.0 / std::log(2.0)) * s;
    curvature += s * s / z / (2.0 * std::log(2.0));
  }
  const double h_lo = std::max(0.0, h - slope - curvature);
  const double h_hi = std::min(std::log2(static_cast<double>(d)), h + slope);

  const double sg = k * std::sqrt(gamma * (1.0 - gamma) / shots);
  const double sp = k * std::sqrt(std::max(0.0, 1.0 - purity_total * purity_total) / shots);
  const double noise_sq = 1.0 / static_cast<double>(d * (d - 1));
  const double lo_p = 1.0 / static_cast<double>(d);

  auto bound = [&](double g, double p_total, double entropy) {
    g = std::clamp(g, 1e-12, 1.0);
    double p_mc = (p_total - (1.0 - g) * (1.0 - g) * noise_sq) / (g * g);
    p_mc = std::clamp(p_mc, lo_p, 1.0);
    const double inner = mcbound::neg_entropy_lower_bound(d, p_mc) + entropy;
    return g < 1.0 ? g * inner + binary_terms(g) : inner;
  };

  Envelope env{bound(gamma, purity_total, h), bound(gamma, purity_total, h)};
  constexpr int kSteps = 40;
  for (int i = 0; i <= kSteps; ++i) {
    const double g = gamma - sg + 2.0 * sg * i / kSteps;
    env.lo = std::min(env.lo, bound(g, purity_total - sp, h_lo));
    env.hi = std::max(env.hi, bound(g, std::min(1.0, purity_total + sp), h_hi));
  }
  return env;
}

}  // namespace testsupport
