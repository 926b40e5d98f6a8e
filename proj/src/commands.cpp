#include "mcbound/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "mcbound/errors.hpp"
#include "mcbound/photonics.hpp"

namespace mcbound::cli {

namespace {

constexpr std::uint64_t kParityStream = 0x9E3779B97F4A7C15ULL;

void require_shots(std::uint64_t shots) {
  if (shots == 0) throw InputError("shots must be > 0");
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const PhysicsError& e) {
    err << "inconsistent input: " << e.what() << '\n';
    return kPhysicsError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

io::json certify_counts(const CountsRecord& counts, const CertifyOptions& options,
                        const NumericPolicy& base_policy, const std::string& source) {
  NumericPolicy policy = base_policy;
  policy.mc_threshold = options.mc_threshold;

  Notices estimation_notes;
  const auto input =
      estimate_params_from_counts(counts, options.noise_model, policy, &estimation_notes);
  auto report = certify(input, policy);
  report.warnings.insert(report.warnings.begin(), estimation_notes.begin(),
                         estimation_notes.end());

  io::json doc = io::report_to_json(report);
  doc["schema_version"] = io::kSchemaVersion;

  io::json inputs = {{"d", input.d},
                     {"zeta", input.zeta},
                     {"gamma", input.gamma},
                     {"q", input.q},
                     {"noise_model", noise_model_name(input.noise_model)},
                     {"purity_total", *input.purity_total},
                     {"coincidence_total", counts.total()},
                     {"parity_shots", counts.parity.shots()}};
  if (const auto* inc = std::get_if<IncoherentNoise>(&input.noise_model)) {
    inputs["lambda"] = inc->lambda;
  }
  doc["inputs"] = std::move(inputs);

  if (options.bootstrap > 0) {
    const auto bs = bootstrap_certification(counts, options.noise_model, options.bootstrap,
                                            options.seed, policy);
    doc["bootstrap"] = {{"resamples", bs.resamples},     {"failures", bs.failures},
                        {"ree_mean", bs.ree_mean},       {"ree_std", bs.ree_std},
                        {"ree_p05", bs.ree_p05},         {"ree_p95", bs.ree_p95},
                        {"purity_mc_mean", bs.purity_mc_mean},
                        {"purity_mc_std", bs.purity_mc_std}};
  }

  doc["provenance"] = {
      {"source", source},
      {"counts_sha256", io::sha256_hex(io::counts_to_json(counts).dump())},
      {"flags",
       {{"noise_model", to_string(options.noise_model)},
        {"mc_threshold", options.mc_threshold},
        {"bootstrap", options.bootstrap},
        {"seed", options.seed}}}};
  return doc;
}

int cmd_certify(const std::filesystem::path& input, const std::filesystem::path& output,
                const CertifyOptions& options, const NumericPolicy& policy,
                std::ostream& err) {
  return guarded(
      [&] {
        const auto counts = io::counts_from_json(io::read_json_file(input));
        const auto doc = certify_counts(counts, options, policy, input.string());
        io::write_text(output, doc.dump(2) + "\n");
        return static_cast<int>(kOk);
      },
      err);
}

std::vector<CurvePoint> compute_curves(std::size_t d_min, std::size_t d_max,
                                       std::size_t points, CurveMode mode,
                                       const NumericPolicy& policy) {
  if (d_min < 2 || d_min > d_max || d_max > 64) {
    throw InputError("curves: require 2 <= d_min <= d_max <= 64");
  }
  if (points < 2) throw InputError("curves: need at least 2 points per curve");
  std::vector<CurvePoint> out;
  out.reserve((d_max - d_min + 1) * points);
  for (std::size_t d = d_min; d <= d_max; ++d) {
    const double lo = 1.0 / static_cast<double>(d);
    const std::vector<double> zeta(d, lo);
    for (std::size_t i = 0; i < points; ++i) {
      double P = lo + (1.0 - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      if (i == 0) P = lo;
      if (i + 1 == points) P = 1.0;
      const double ree = ree_lower_bound_mc(zeta, P, policy);
      const double bound = mode == CurveMode::Ree
                               ? ree
                               : static_cast<double>(entanglement_dim_lower_bound(ree, policy));
      out.push_back({d, P, bound});
    }
  }
  return out;
}

std::string curves_csv(const std::vector<CurvePoint>& points) {
  std::string s = "d,purity,bound\n";
  for (const auto& p : points) {
    s += std::to_string(p.d) + ',' + io::format_double(p.purity) + ',' +
         io::format_double(p.bound) + '\n';
  }
  return s;
}

int cmd_curves(std::size_t d_min, std::size_t d_max, std::size_t points, CurveMode mode,
               const std::filesystem::path& output, const NumericPolicy& policy,
               std::ostream& err) {
  return guarded(
      [&] {
        io::write_text(output, curves_csv(compute_curves(d_min, d_max, points, mode, policy)));
        return static_cast<int>(kOk);
      },
      err);
}

OracleRun run_oracle(std::size_t d, double purity, double resolution, std::size_t samples,
                     std::uint64_t seed) {
  if (d < 2 || d > 64) throw InputError("oracle: d must be in 2..64");
  const double lo = 1.0 / static_cast<double>(d);
  constexpr double kEdge = 1e-12;
  if (!std::isfinite(purity) || purity < lo - kEdge || purity > 1.0 + kEdge) {
    std::ostringstream os;
    os << "oracle: purity " << purity << " is infeasible for d = " << d << " (need [1/d, 1])";
    throw InputError(os.str());
  }
  purity = std::clamp(purity, lo, 1.0);

  OracleRun run;
  run.d = d;
  run.purity = purity;
  run.closed_form = neg_entropy_lower_bound(d, purity);

  auto plogp = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
  if (d == 2) {
    const auto [hi, low] = oracle::exact_d2(purity);
    run.method = "exact_d2";
    run.oracle_min = plogp(hi) + plogp(low);
    run.pass = std::abs(run.oracle_min - run.closed_form) <= 1e-9;
    return run;
  }
  if (purity - lo <= kEdge) {
    run.method = "uniform";
    run.oracle_min = -std::log2(static_cast<double>(d));
    run.pass = std::abs(run.oracle_min - run.closed_form) <= 1e-9;
    return run;
  }

  run.candidates = oracle::candidates(d, purity);
  const auto best = oracle::best_candidate(d, purity);
  run.best_s_a = best.s_a;
  const bool closed_matches_best = std::abs(best.objective - run.closed_form) <= 1e-9;
  if (d <= 4) {
    run.method = "grid";
    run.oracle_min = oracle::grid_oracle_min(d, purity, resolution);
    run.pass = std::abs(run.oracle_min - run.closed_form) <= 1e-3 && best.s_a == 1 &&
               closed_matches_best;
  } else {
    run.method = "sampled";
    const auto [min, feasible] = oracle::sampled_oracle_min(d, purity, samples, seed);
    run.oracle_min = min;
    run.feasible_samples = feasible;
    // Sampling can only find points above the true minimum.
    run.pass = feasible > 0 && min >= run.closed_form - 1e-9 && best.s_a == 1 &&
               closed_matches_best;
  }
  return run;
}

std::string candidates_csv(const std::vector<oracle::Candidate>& candidates) {
  std::string s = "s_a,phi_a,phi_x,objective,physical\n";
  for (const auto& c : candidates) {
    s += std::to_string(c.s_a) + ',' + io::format_double(c.phi_a) + ',' +
         io::format_double(c.phi_x) + ',' + io::format_double(c.objective) + ',' +
         (c.physical ? "true" : "false") + '\n';
  }
  return s;
}

std::string oracle_verdict(const OracleRun& run) {
  std::ostringstream os;
  os << "d=" << run.d << " purity=" << io::format_double(run.purity) << '\n'
     << "closed_form=" << io::format_double(run.closed_form) << '\n'
     << "oracle_method=" << run.method << '\n'
     << "oracle_min=" << io::format_double(run.oracle_min) << '\n';
  if (run.method == "sampled") os << "feasible_samples=" << run.feasible_samples << '\n';
  if (!run.candidates.empty()) os << "best_s_a=" << run.best_s_a << '\n';
  os << "verdict=" << (run.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

int cmd_oracle(std::size_t d, double purity, double resolution,
               const std::filesystem::path& output, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto run = run_oracle(d, purity, resolution);
        io::write_text(output, candidates_csv(run.candidates));
        out << oracle_verdict(run);
        return static_cast<int>(run.pass ? kOk : kPhysicsError);
      },
      err);
}

CountsRecord simulate_counts(const io::StateSpec& spec, std::uint64_t shots,
                             std::uint64_t seed, const NumericPolicy& policy) {
  require_shots(shots);
  const auto rho = io::build_state(spec, policy);
  CountsRecord rec;
  rec.d = rho.dim_subsystem();
  rec.coincidences = photonics::simulate_coincidence_counts(rho, shots, seed);
  const auto parity = photonics::simulate_parity_counts(rho, shots, seed ^ kParityStream);
  rec.parity = {parity.even, parity.odd};
  rec.metadata = {{"generator", "mcbound simulate"},
                  {"shots", std::to_string(shots)},
                  {"seed", std::to_string(seed)},
                  {"gamma", io::format_double(spec.gamma)},
                  {"noise_model", noise_model_name(spec.noise)}};
  return rec;
}

int cmd_simulate(const std::filesystem::path& state_spec, std::uint64_t shots,
                 std::uint64_t seed, const std::filesystem::path& output,
                 const NumericPolicy& policy, std::ostream& err) {
  return guarded(
      [&] {
        const auto spec = io::state_spec_from_json(io::read_json_file(state_spec));
        const auto rec = simulate_counts(spec, shots, seed, policy);
        io::write_text(output, io::counts_to_json(rec).dump(2) + "\n");
        return static_cast<int>(kOk);
      },
      err);
}

io::json parity_sim(const io::StateSpec& spec, std::uint64_t shots, std::uint64_t seed,
                    const NumericPolicy& policy) {
  require_shots(shots);
  const auto rho = io::build_state(spec, policy);
  const auto counts = photonics::simulate_parity_counts(rho, shots, seed);
  const double n = static_cast<double>(shots);
  const double estimate =
      (static_cast<double>(counts.even) - static_cast<double>(counts.odd)) / n;
  const double expected = purity(rho);
  return {{"shots", shots},
          {"seed", seed},
          {"even", counts.even},
          {"odd", counts.odd},
          {"estimate", estimate},
          {"expected", expected},
          {"sigma", std::sqrt(std::max(0.0, 1.0 - expected * expected) / n)}};
}

int cmd_parity_sim(const std::filesystem::path& state_spec, std::uint64_t shots,
                   std::uint64_t seed, const std::filesystem::path& output,
                   const NumericPolicy& policy, std::ostream& err) {
  return guarded(
      [&] {
        const auto spec = io::state_spec_from_json(io::read_json_file(state_spec));
        io::write_text(output, parity_sim(spec, shots, seed, policy).dump(2) + "\n");
        return static_cast<int>(kOk);
      },
      err);
}

}  // namespace mcbound::cli
