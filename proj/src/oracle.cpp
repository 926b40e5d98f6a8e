#include "mcbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mcbound/errors.hpp"

namespace mcbound::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Roots this close to zero are zero (the d = 3, P = 1/2, s_a = 2 type cases).
constexpr double kZeroSnap = 1e-14;

double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Rounding slack allowed above P = 1; such inputs are treated as pure.
constexpr double kPureSlack = 1e-12;

double require_candidate_domain(std::size_t d, double P) {
  if (d < 3) throw InputError("candidate: d must be >= 3");
  const double lo = 1.0 / static_cast<double>(d);
  if (!(P > lo && P <= 1.0 + kPureSlack)) {
    std::ostringstream os;
    os << "candidate: purity " << P << " outside (1/d, 1]";
    throw InputError(os.str());
  }
  return std::min(P, 1.0);
}

// Minimizes the objective over n >= 2 remaining coordinates with sum S and
// sum of squares T; returns +inf when nothing feasible is found.
double sweep(std::size_t n, double S, double T, double resolution) {
  if (n == 2) {
    const double disc = 2.0 * T - S * S;
    if (disc < -1e-12) return kInf;
    const double r = std::sqrt(std::max(0.0, disc));
    double hi = 0.5 * (S + r);
    double lo = 0.5 * (S - r);
    if (lo < -1e-12) return kInf;
    lo = std::max(lo, 0.0);
    hi = std::max(hi, 0.0);
    return plogp(hi) + plogp(lo);
  }
  // Feasible first coordinate x: (n-1)(T - x^2) >= (S - x)^2.
  const double nn = static_cast<double>(n);
  const double disc = (nn - 1.0) * (nn * T - S * S);
  if (disc < -1e-12) return kInf;
  const double r = std::sqrt(std::max(0.0, disc));
  const double lo = std::max(0.0, (S - r) / nn);
  const double hi = std::min(S, (S + r) / nn);
  if (hi < lo) return kInf;
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / resolution));
  double best = kInf;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x = steps == 0 ? lo
                                : (i == steps ? hi
                                              : lo + (hi - lo) * static_cast<double>(i) /
                                                         static_cast<double>(steps));
    const double rest = sweep(n - 1, S - x, T - x * x, resolution);
    best = std::min(best, plogp(x) + rest);
  }
  return best;
}

}  // namespace

Candidate candidate(std::size_t d, double P, std::size_t s_a) {
  P = require_candidate_domain(d, P);
  if (s_a < 1 || s_a > d - 1) throw InputError("candidate: s_a must be in 1..d-1");
  const double dd = static_cast<double>(d);
  const double sa = static_cast<double>(s_a);
  const double excess = dd * P - 1.0;

  Candidate c;
  c.s_a = s_a;
  c.phi_a = (1.0 + std::sqrt((dd - sa) / sa * excess)) / dd;
  c.phi_x = (1.0 - std::sqrt(sa / (dd - sa) * excess)) / dd;
  if (std::abs(c.phi_x) < kZeroSnap) c.phi_x = 0.0;
  c.physical = c.phi_x >= 0.0;
  c.objective = c.physical ? sa * plogp(c.phi_a) + (dd - sa) * plogp(c.phi_x) : kInf;
  return c;
}

std::vector<Candidate> candidates(std::size_t d, double P) {
  P = require_candidate_domain(d, P);
  std::vector<Candidate> out;
  out.reserve(d - 1);
  for (std::size_t s = 1; s < d; ++s) out.push_back(candidate(d, P, s));
  return out;
}

Candidate best_candidate(std::size_t d, double P) {
  const auto all = candidates(d, P);
  // s_a = 1 always has phi_x >= 0, so at least one physical candidate exists.
  auto best = std::min_element(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.physical != b.physical) return a.physical;
    return a.objective < b.objective;
  });
  return *best;
}

double grid_oracle_min(std::size_t d, double P, double resolution) {
  if (d != 3 && d != 4) throw InputError("grid_oracle_min: d must be 3 or 4");
  if (!(resolution > 0.0 && resolution <= 1e-3)) {
    throw InputError("grid_oracle_min: resolution must be in (0, 1e-3]");
  }
  const double best = sweep(d, 1.0, P, resolution);
  if (!std::isfinite(best)) {
    std::ostringstream os;
    os << "grid_oracle_min: no feasible spectrum for d = " << d << ", P = " << P;
    throw InputError(os.str());
  }
  return best;
}

std::pair<double, std::size_t> sampled_oracle_min(std::size_t d, double P,
                                                  std::size_t samples,
                                                  std::uint64_t seed) {
  if (d < 2) throw InputError("sampled_oracle_min: d must be >= 2");
  const double dd = static_cast<double>(d);
  const double radius_sq = P - 1.0 / dd;
  if (radius_sq < -1e-12 || P > 1.0 + 1e-12) {
    throw InputError("sampled_oracle_min: purity outside [1/d, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_conc(std::log(0.05), std::log(2.0));
  std::uniform_int_distribution<std::size_t> vertex(0, d - 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> x(d);
  std::vector<double> y(d);
  double best = kInf;
  std::size_t feasible = 0;

  // Dirichlet point with a random concentration, so faces are reached too.
  auto dirichlet = [&](std::vector<double>& v) {
    std::gamma_distribution<double> g(std::exp(log_conc(rng)), 1.0);
    double total = 0.0;
    for (auto& e : v) total += (e = g(rng));
    if (!(total > 0.0)) {
      std::fill(v.begin(), v.end(), 0.0);
      v[vertex(rng)] = 1.0;
      return;
    }
    for (auto& e : v) e /= total;
  };
  auto sq = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
  };

  for (std::size_t s = 0; s < samples; ++s) {
    // A segment x -> y inside the simplex whose endpoint purities straddle
    // P crosses the purity sphere exactly once; that crossing is feasible.
    dirichlet(x);
    if (coin(rng)) {
      std::fill(y.begin(), y.end(), 0.0);
      y[vertex(rng)] = 1.0;
    } else {
      dirichlet(y);
    }
    double px = sq(x);
    double py = sq(y);
    if ((px - P) * (py - P) > 0.0) {
      // Same side: swap in the uniform point (purity 1/d) or a vertex (1).
      std::fill(y.begin(), y.end(), px > P ? 1.0 / dd : 0.0);
      if (px <= P) y[vertex(rng)] = 1.0;
      py = sq(y);
    }
    // |x + t (y - x)|^2 = P for t in [0, 1].
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double u = y[i] - x[i];
      a += u * u;
      b += 2.0 * x[i] * u;
    }
    const double c = px - P;
    double t = 0.0;
    if (a > 0.0) {
      const double disc = std::max(0.0, b * b - 4.0 * a * c);
      const double r = std::sqrt(disc);
      const double t1 = (-b + r) / (2.0 * a);
      const double t2 = (-b - r) / (2.0 * a);
      t = (t1 >= -1e-12 && t1 <= 1.0 + 1e-12) ? t1 : t2;
    }
    t = std::clamp(t, 0.0, 1.0);
    double value = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      value += plogp(std::max(0.0, x[i] + t * (y[i] - x[i])));
    }
    ++feasible;
    best = std::min(best, value);
  }
  return {best, feasible};
}

std::pair<double, double> exact_d2(double P) {
  if (!(P >= 0.5 && P <= 1.0)) throw InputError("exact_d2: purity outside [1/2, 1]");
  const double r = 0.5 * std::sqrt(2.0 * P - 1.0);
  return {0.5 + r, 0.5 - r};
}

}  // namespace mcbound::oracle
