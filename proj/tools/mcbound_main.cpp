// mcbound: entanglement certification for maximally correlated states from
// correlation counts and a single purity measurement.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mcbound/commands.hpp"

using namespace mcbound;

int main(int argc, char** argv) {
  CLI::App app{"Lower-bound the relative entropy of entanglement of maximally correlated "
               "bipartite states"};
  app.require_subcommand(1);

  NumericPolicy policy;
  try {
    policy = NumericPolicy::with_env_overrides();
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return cli::kInputError;
  }

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "Certify entanglement from a counts file");
  std::string certify_in;
  std::string certify_out = "-";
  std::string noise_model = "auto";
  cli::CertifyOptions certify_opts;
  certify_opts.mc_threshold = policy.mc_threshold;
  certify_cmd->add_option("input", certify_in, "Counts JSON file")->required();
  certify_cmd->add_option("-o,--output", certify_out, "Report path ('-' for stdout)");
  certify_cmd->add_option("--noise-model", noise_model, "auto|none|white|incoherent")
      ->check(CLI::IsMember({"auto", "none", "white", "incoherent"}));
  certify_cmd->add_option("--mc-threshold", certify_opts.mc_threshold,
                          "q/total at or below which the state is treated as noise-free");
  certify_cmd->add_option("--bootstrap", certify_opts.bootstrap, "Bootstrap resamples (0 = off)");
  certify_cmd->add_option("--seed", certify_opts.seed, "Bootstrap seed");

  // curves
  auto* curves_cmd = app.add_subcommand("curves", "Emit uniform-zeta bound curves as CSV");
  std::size_t d_min = 2;
  std::size_t d_max = 12;
  std::size_t points = 101;
  std::string mode = "ree";
  std::string curves_out = "-";
  curves_cmd->add_option("--d-min", d_min, "Smallest subsystem dimension");
  curves_cmd->add_option("--d-max", d_max, "Largest subsystem dimension");
  curves_cmd->add_option("--points", points, "Purity samples per curve");
  curves_cmd->add_option("--mode", mode, "ree|dstar")->check(CLI::IsMember({"ree", "dstar"}));
  curves_cmd->add_option("-o,--output", curves_out, "CSV path ('-' for stdout)");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Check the closed-form bound by enumeration");
  std::size_t oracle_d = 4;
  double oracle_p = 0.5;
  double resolution = 1e-3;
  std::string oracle_out = "-";
  oracle_cmd->add_option("--d", oracle_d, "Subsystem dimension")->required();
  oracle_cmd->add_option("--purity", oracle_p, "Purity of the maximally correlated state")
      ->required();
  oracle_cmd->add_option("--resolution", resolution, "Grid spacing (<= 1e-3)");
  oracle_cmd->add_option("-o,--output", oracle_out, "Candidate CSV path ('-' for stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate counts for a state spec");
  std::string spec_in;
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 42;
  std::string sim_out = "-";
  sim_cmd->add_option("spec", spec_in, "State spec JSON file")->required();
  sim_cmd->add_option("--shots", shots, "Shots per measurement");
  sim_cmd->add_option("--seed", seed, "RNG seed");
  sim_cmd->add_option("-o,--output", sim_out, "Counts path ('-' for stdout)");

  // parity-sim
  auto* parity_cmd = app.add_subcommand("parity-sim", "Simulate the two-copy parity measurement");
  std::string parity_spec;
  std::uint64_t parity_shots = 1000000;
  std::uint64_t parity_seed = 42;
  std::string parity_out = "-";
  parity_cmd->add_option("spec", parity_spec, "State spec JSON file")->required();
  parity_cmd->add_option("--shots", parity_shots, "Parity shots");
  parity_cmd->add_option("--seed", parity_seed, "RNG seed");
  parity_cmd->add_option("-o,--output", parity_out, "Result path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  if (*certify_cmd) {
    const int code = cli::guarded(
        [&] {
          certify_opts.noise_model = parse_noise_model_choice(noise_model);
          return 0;
        },
        std::cerr);
    if (code != 0) return code;
    return cli::cmd_certify(certify_in, certify_out, certify_opts, policy, std::cerr);
  }
  if (*curves_cmd) {
    const auto m = mode == "ree" ? cli::CurveMode::Ree : cli::CurveMode::DStar;
    return cli::cmd_curves(d_min, d_max, points, m, curves_out, policy, std::cerr);
  }
  if (*oracle_cmd) {
    return cli::cmd_oracle(oracle_d, oracle_p, resolution, oracle_out, std::cout, std::cerr);
  }
  if (*sim_cmd) return cli::cmd_simulate(spec_in, shots, seed, sim_out, policy, std::cerr);
  if (*parity_cmd) {
    return cli::cmd_parity_sim(parity_spec, parity_shots, parity_seed, parity_out, policy,
                               std::cerr);
  }
  return cli::kInternal;
}
