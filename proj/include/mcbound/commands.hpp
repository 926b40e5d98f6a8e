#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mcbound/certify.hpp"
#include "mcbound/io.hpp"
#include "mcbound/oracle.hpp"

namespace mcbound::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kPhysicsError = 3 };

/// Runs `body`, mapping library exceptions to exit codes and printing the
/// message to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

// ---- certify --------------------------------------------------------------

struct CertifyOptions {
  NoiseModelChoice noise_model = NoiseModelChoice::Auto;
  double mc_threshold = 1e-3;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 42;
};

/// Full report document: certification results, estimated inputs, bootstrap
/// (when requested) and a provenance block.
io::json certify_counts(const CountsRecord& counts, const CertifyOptions& options,
                        const NumericPolicy& policy, const std::string& source);

int cmd_certify(const std::filesystem::path& input, const std::filesystem::path& output,
                const CertifyOptions& options, const NumericPolicy& policy,
                std::ostream& err);

// ---- curves ---------------------------------------------------------------

enum class CurveMode { Ree, DStar };

struct CurvePoint {
  std::size_t d;
  double purity;
  double bound;
};

/// Uniform-zeta bound curves for d_min..d_max on `points` purities spanning
/// [1/d, 1] (endpoints exact). Rows sorted by (d, purity).
std::vector<CurvePoint> compute_curves(std::size_t d_min, std::size_t d_max,
                                       std::size_t points, CurveMode mode,
                                       const NumericPolicy& policy = {});

/// Header `d,purity,bound`, 17 significant digits.
std::string curves_csv(const std::vector<CurvePoint>& points);

int cmd_curves(std::size_t d_min, std::size_t d_max, std::size_t points, CurveMode mode,
               const std::filesystem::path& output, const NumericPolicy& policy,
               std::ostream& err);

// ---- oracle ---------------------------------------------------------------

struct OracleRun {
  std::size_t d = 0;
  double purity = 0.0;
  std::vector<oracle::Candidate> candidates;
  std::string method;  ///< grid | sampled | exact_d2 | uniform | pure
  double oracle_min = 0.0;
  double closed_form = 0.0;
  std::size_t best_s_a = 1;
  std::size_t feasible_samples = 0;
  bool pass = false;
};

OracleRun run_oracle(std::size_t d, double purity, double resolution,
                     std::size_t samples = 100000, std::uint64_t seed = 42);

/// Columns s_a,phi_a,phi_x,objective,physical.
std::string candidates_csv(const std::vector<oracle::Candidate>& candidates);
std::string oracle_verdict(const OracleRun& run);

int cmd_oracle(std::size_t d, double purity, double resolution,
               const std::filesystem::path& output, std::ostream& out, std::ostream& err);

// ---- simulate / parity-sim ------------------------------------------------

/// Coincidences and parity tally for `shots` pairs each; deterministic in
/// `seed`.
CountsRecord simulate_counts(const io::StateSpec& spec, std::uint64_t shots,
                             std::uint64_t seed, const NumericPolicy& policy = {});

int cmd_simulate(const std::filesystem::path& state_spec, std::uint64_t shots,
                 std::uint64_t seed, const std::filesystem::path& output,
                 const NumericPolicy& policy, std::ostream& err);

/// Parity-only simulation with the expected value and binomial error bar.
io::json parity_sim(const io::StateSpec& spec, std::uint64_t shots, std::uint64_t seed,
                    const NumericPolicy& policy = {});

int cmd_parity_sim(const std::filesystem::path& state_spec, std::uint64_t shots,
                   std::uint64_t seed, const std::filesystem::path& output,
                   const NumericPolicy& policy, std::ostream& err);

}  // namespace mcbound::cli
