#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "mcbound/certify.hpp"
#include "mcbound/counts.hpp"
#include "mcbound/densmat.hpp"

namespace mcbound::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// {"d": d, "entries": [[re, im], ...]} with d^4 row-major pairs.
json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j, const NumericPolicy& policy = {});

/// {"schema_version": 1, "d": d, "coincidences": [[...], ...],
///  "parity": {"even": n, "odd": n}, "metadata": {...}}
json counts_to_json(const CountsRecord& counts);
CountsRecord counts_from_json(const json& j);

/// State description consumed by `simulate` and `parity-sim`:
/// {"schema_version": 1, "alpha": [[a00, a01], ...], "gamma": 0.9,
///  "noise": {"model": "white"} | {"model": "incoherent", "lambda": [...]}
///         | {"model": "none"}}
/// alpha entries are numbers or [re, im] pairs; gamma defaults to 1.
struct StateSpec {
  CMatrix alpha;
  double gamma = 1.0;
  NoiseModel noise = NoiseFree{};
};

StateSpec state_spec_from_json(const json& j);

/// The maximally correlated component built from the spec.
DensityMatrix build_mc_state(const StateSpec& spec, const NumericPolicy& policy = {});
/// gamma * rho_mc + (1 - gamma) * rho_noise.
DensityMatrix build_state(const StateSpec& spec, const NumericPolicy& policy = {});

json report_to_json(const CertificationReport& report);

/// Reads and parses a JSON file; malformed content raises InputError.
json read_json_file(const std::filesystem::path& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::filesystem::path& path, const std::string& text);

/// 17 significant digits, '.' decimal point.
std::string format_double(double x);

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace mcbound::io
