// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails or exceeds its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "mcbound/commands.hpp"
#include "mcbound/oracle.hpp"
#include "mcbound/photonics.hpp"
#include "support.hpp"

using namespace mcbound;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure; keeps later checks from overwriting it.
void expect(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) {
    o.ok = false;
    o.detail = what;
  }
}

std::string fmt(double x) { return io::format_double(x); }

std::vector<double> uniform(std::size_t d) {
  return std::vector<double>(d, 1.0 / static_cast<double>(d));
}

Outcome endpoints() {
  Outcome o;
  const auto pts = cli::compute_curves(2, 12, 101, cli::CurveMode::Ree);
  for (std::size_t d = 2; d <= 12; ++d) {
    const double top = ree_lower_bound_mc(uniform(d), 1.0);
    const double bottom = ree_lower_bound_mc(uniform(d), 1.0 / static_cast<double>(d));
    expect(o, std::abs(top - std::log2(static_cast<double>(d))) <= 1e-12,
           "d=" + std::to_string(d) + " bound(1)=" + fmt(top));
    expect(o, std::abs(bottom) <= 1e-12, "d=" + std::to_string(d) + " bound(1/d)=" + fmt(bottom));
  }
  for (std::size_t i = 0; i < pts.size(); i += 101) {
    expect(o, std::abs(pts[i].bound) <= 1e-12, "curve start d=" + std::to_string(pts[i].d));
    const auto& last = pts[i + 100];
    expect(o, std::abs(last.bound - std::log2(static_cast<double>(last.d))) <= 1e-12,
           "curve end d=" + std::to_string(last.d));
  }
  o.detail = o.ok ? "d=2..12 endpoints exact to 1e-12" : o.detail;
  return o;
}

Outcome staircase() {
  Outcome o;
  constexpr std::size_t kPoints = 201;
  const auto pts = cli::compute_curves(3, 12, kPoints, cli::CurveMode::DStar);
  for (std::size_t c = 0; c < pts.size(); c += kPoints) {
    const std::size_t d = pts[c].d;
    std::size_t steps = 0;
    for (std::size_t i = c; i < c + kPoints; ++i) {
      const double v = pts[i].bound;
      expect(o, v == std::floor(v) && v >= 1.0 && v <= static_cast<double>(d),
             "non-integer or out-of-range d* at d=" + std::to_string(d));
      if (i > c) {
        expect(o, v >= pts[i - 1].bound, "d* decreases at d=" + std::to_string(d));
        if (v > pts[i - 1].bound) ++steps;
      }
    }
    expect(o, pts[c].bound == 1.0, "d*(1/d) != 1 at d=" + std::to_string(d));
    expect(o, pts[c + kPoints - 1].bound == static_cast<double>(d),
           "d*(1) != d at d=" + std::to_string(d));
    expect(o, steps >= 1, "flat staircase at d=" + std::to_string(d));
  }
  o.detail = o.ok ? "d=3..12 integer staircases, d*(1)=d" : o.detail;
  return o;
}

Outcome d2_exact() {
  Outcome o;
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto rho = testsupport::random_mc_state(2, rng);
    const double diff = std::abs(ree_exact_mc(rho) -
                                 ree_lower_bound_mc(correlation_profile(rho).zeta, purity(rho)));
    worst = std::max(worst, diff);
  }
  expect(o, worst <= 1e-9, "max deviation " + fmt(worst));
  if (o.ok) o.detail = "1000 states, max |exact - bound| = " + fmt(worst);
  return o;
}

Outcome lagrange() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t d : {3u, 4u}) {
    const double lo = 1.0 / static_cast<double>(d);
    for (int i = 0; i <= 10; ++i) {
      const double P = i == 10 ? 1.0 : lo + (1.0 - lo) * i / 10.0;
      const double diff =
          std::abs(oracle::grid_oracle_min(d, P, 1e-3) - neg_entropy_lower_bound(d, P));
      worst = std::max(worst, diff);
    }
  }
  expect(o, worst <= 1e-3, "grid deviation " + fmt(worst));
  std::size_t comparisons = 0;
  for (std::size_t d = 3; d <= 12; ++d) {
    const double lo = 1.0 / static_cast<double>(d);
    for (int i = 1; i <= 25; ++i) {
      const double P = lo + (1.0 - lo) * i / 26.0;
      const auto all = oracle::candidates(d, P);
      for (std::size_t s = 0; s + 1 < all.size(); ++s) {
        if (!all[s + 1].physical) continue;
        ++comparisons;
        expect(o, all[s].objective < all[s + 1].objective,
               "objective not increasing at d=" + std::to_string(d) + " P=" + fmt(P) +
                   " s_a=" + std::to_string(s + 1));
      }
      expect(o, oracle::best_candidate(d, P).s_a == 1, "best s_a != 1 at d=" + std::to_string(d));
    }
  }
  if (o.ok) {
    o.detail = "grid max deviation " + fmt(worst) + ", " + std::to_string(comparisons) +
               " strict candidate comparisons";
  }
  return o;
}

Outcome lower_bound() {
  Outcome o;
  Rng rng(202);
  std::size_t violations = 0;
  double min_gap = 1e300;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
    const auto rho = testsupport::random_mc_state(d, rng);
    const double gap =
        ree_exact_mc(rho) - ree_lower_bound_mc(correlation_profile(rho).zeta, purity(rho));
    min_gap = std::min(min_gap, gap);
    if (gap < -1e-9) ++violations;
  }
  expect(o, violations == 0, std::to_string(violations) + " violations");
  if (o.ok) o.detail = "10000 states, 0 violations, min gap " + fmt(min_gap);
  return o;
}

Outcome noisy() {
  Outcome o;
  Rng rng(303);
  double worst_rt = 0.0;
  double min_slack = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 4);
    const double gamma = std::array{0.5, 0.8, 0.95}[static_cast<std::size_t>(t / 4 % 3)];
    const auto mc = testsupport::random_mc_state(d, rng);
    const bool white = t % 2 == 0;
    const auto lambda = white ? std::vector<double>(d * (d - 1), 1.0 / static_cast<double>(d * (d - 1)))
                              : testsupport::random_simplex(d * (d - 1), rng);
    const NoiseModel model = white ? NoiseModel{WhiteNoise{}} : NoiseModel{IncoherentNoise{lambda}};
    const auto rho = mix(mc, make_noise_state(lambda), gamma);
    const double p_mc = purity_mc_from_total(purity(rho), gamma, model, d);
    worst_rt = std::max(worst_rt, std::abs(p_mc - purity(mc)));
    const double bound = ree_lower_bound_noisy(correlation_profile(mc).zeta, gamma, p_mc);
    const double ceiling = gamma * ree_exact_mc(mc) + testsupport::binary_terms(gamma);
    min_slack = std::min(min_slack, ceiling - bound);
  }
  expect(o, worst_rt <= 1e-9, "purity round trip off by " + fmt(worst_rt));
  expect(o, min_slack >= -1e-9, "bound exceeds mixture value by " + fmt(-min_slack));
  if (o.ok) {
    o.detail = "1000 mixtures, round trip " + fmt(worst_rt) + ", min slack " + fmt(min_slack);
  }
  return o;
}

Outcome parity() {
  Outcome o;
  Rng rng(404);
  double worst_fock = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 4);
    const photonics::TwoPhotonState j(testsupport::random_amplitudes(d, rng));
    const photonics::TwoPhotonState k(testsupport::random_amplitudes(d, rng));
    worst_fock = std::max(worst_fock, std::abs(photonics::fock_brute_force_parity(j, k) -
                                               photonics::parity_expectation_pure(j, k)));
  }
  double worst_mixed = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
    const auto rho = testsupport::random_mc_state(d, rng);
    worst_mixed =
        std::max(worst_mixed, std::abs(photonics::parity_expectation_mixed(rho, rho) - purity(rho)));
  }
  expect(o, worst_fock <= 1e-9, "Fock vs closed form " + fmt(worst_fock));
  expect(o, worst_mixed <= 1e-9, "mixed parity vs purity " + fmt(worst_mixed));
  if (o.ok) {
    o.detail = "500 Fock pairs max " + fmt(worst_fock) + ", 500 mixed max " + fmt(worst_mixed);
  }
  return o;
}

Outcome schur_horn() {
  Outcome o;
  Rng rng(505);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t d = 2 + static_cast<std::size_t>(t % 4);
    const auto rho = testsupport::random_density(d, rng);
    if (!majorizes(eigenvalues(rho).values, diagonal(rho))) ++violations;
  }
  expect(o, violations == 0, std::to_string(violations) + " violations");
  if (o.ok) o.detail = "1000 states, 0 violations";
  return o;
}

std::string pipeline_report(const io::StateSpec& spec, std::uint64_t shots, std::uint64_t seed) {
  const std::string counts_text = io::counts_to_json(cli::simulate_counts(spec, shots, seed)).dump(2);
  const auto counts = io::counts_from_json(io::json::parse(counts_text));
  return cli::certify_counts(counts, {}, {}, "acceptance").dump(2);
}

Outcome end_to_end() {
  Outcome o;
  constexpr double kAnalytic = 1.3310044064107188;  // 50-digit reference
  constexpr std::uint64_t kShots = 10'000'000;
  constexpr std::uint64_t kSeed = 20240601;
  const double gamma = 0.9;
  const std::size_t d = 4;

  io::StateSpec spec;
  spec.alpha = CMatrix::Constant(4, 4, Complex(0.25, 0.0));
  spec.gamma = gamma;
  spec.noise = WhiteNoise{};

  const double formula = ree_lower_bound_noisy(uniform(d), gamma, 1.0);
  expect(o, std::abs(formula - kAnalytic) <= 1e-12, "analytic value " + fmt(formula));

  const auto first = pipeline_report(spec, kShots, kSeed);
  const auto second = pipeline_report(spec, kShots, kSeed);
  expect(o, first == second, "reports differ across reruns");

  const double certified = io::json::parse(first)["ree_lower_bound"].get<double>();
  const double p_total = purity(io::build_state(spec));
  const auto env = testsupport::white_noise_envelope(uniform(d), gamma, p_total,
                                                     static_cast<double>(kShots));
  expect(o, env.lo <= kAnalytic && kAnalytic <= env.hi, "envelope misses analytic value");
  expect(o, certified >= env.lo && certified <= env.hi,
         "certified " + fmt(certified) + " outside [" + fmt(env.lo) + ", " + fmt(env.hi) + "]");
  if (o.ok) {
    o.detail = "certified " + fmt(certified) + " in 3-sigma envelope [" + fmt(env.lo) + ", " +
               fmt(env.hi) + "], analytic " + fmt(kAnalytic) + ", reruns byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria{
      {1, "curve endpoints", 1.0, endpoints},
      {2, "d* staircase", 1.0, staircase},
      {3, "d=2 exactness", 5.0, d2_exact},
      {4, "Lagrange candidates and grid oracle", 120.0, lagrange},
      {5, "lower-bound property", 60.0, lower_bound},
      {6, "noisy-bound consistency", 60.0, noisy},
      {7, "parity identities", 120.0, parity},
      {8, "Schur-Horn majorization", 30.0, schur_horn},
      {9, "end-to-end pipeline", 60.0, end_to_end},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.budget_s) {
      o.ok = false;
      o.detail = "over runtime budget";
    }
    if (!o.ok) ++failures;
    std::printf("[%s] criterion %d: %s (%.3f s / %.0f s budget): %s\n", o.ok ? "PASS" : "FAIL",
                c.id, c.name, secs, c.budget_s, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
