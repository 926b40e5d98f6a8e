#include "mcbound/io.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <openssl/evp.h>

#include "mcbound/errors.hpp"

namespace mcbound::io {

namespace {

std::uint64_t parse_count(const json& v, const char* what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw InputError(std::string(what) + ": negative count");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  throw InputError(std::string(what) + ": counts must be integers");
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError("complex entries must be a number or a [re, im] pair");
}

void check_schema(const json& j, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  if (j.contains("schema_version")) {
    const auto& v = j.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      throw InputError(std::string(what) + ": unsupported schema_version");
    }
  }
}

}  // namespace

json density_to_json(const DensityMatrix& rho) {
  json entries = json::array();
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return {{"d", rho.dim_subsystem()}, {"entries", std::move(entries)}};
}

DensityMatrix density_from_json(const json& j, const NumericPolicy& policy) {
  try {
    const auto d = j.at("d").get<std::size_t>();
    const auto& entries = j.at("entries");
    const std::size_t n = d * d;
    if (!entries.is_array() || entries.size() != n * n) {
      throw InputError("density matrix: expected d^4 entries");
    }
    CMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n * n; ++k) {
      m(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) =
          parse_complex(entries[k]);
    }
    return DensityMatrix(d, std::move(m), policy);
  } catch (const json::exception& e) {
    throw InputError(std::string("density matrix: ") + e.what());
  }
}

json counts_to_json(const CountsRecord& counts) {
  json rows = json::array();
  for (std::size_t i = 0; i < counts.d; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < counts.d; ++j) row.push_back(counts.at(i, j));
    rows.push_back(std::move(row));
  }
  json meta = json::object();
  for (const auto& [k, v] : counts.metadata) meta[k] = v;
  return {{"schema_version", kSchemaVersion},
          {"d", counts.d},
          {"coincidences", std::move(rows)},
          {"parity", {{"even", counts.parity.even}, {"odd", counts.parity.odd}}},
          {"metadata", std::move(meta)}};
}

CountsRecord counts_from_json(const json& j) {
  check_schema(j, "counts");
  try {
    CountsRecord rec;
    const auto& rows = j.at("coincidences");
    if (!rows.is_array() || rows.empty()) throw InputError("counts: coincidences must be a d x d array");
    rec.d = rows.size();
    if (j.contains("d") && j.at("d").get<std::size_t>() != rec.d) {
      throw InputError("counts: 'd' does not match the coincidence matrix");
    }
    rec.coincidences.reserve(rec.d * rec.d);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rec.d) {
        throw InputError("counts: coincidence matrix must be square");
      }
      for (const auto& v : row) rec.coincidences.push_back(parse_count(v, "coincidences"));
    }
    if (j.contains("parity")) {
      const auto& p = j.at("parity");
      rec.parity.even = parse_count(p.at("even"), "parity.even");
      rec.parity.odd = parse_count(p.at("odd"), "parity.odd");
    }
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) {
        rec.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    rec.validate();
    return rec;
  } catch (const json::exception& e) {
    throw InputError(std::string("counts: ") + e.what());
  }
}

StateSpec state_spec_from_json(const json& j) {
  check_schema(j, "state spec");
  try {
    StateSpec spec;
    const auto& a = j.at("alpha");
    if (!a.is_array() || a.empty()) throw InputError("state spec: alpha must be a d x d array");
    const auto d = static_cast<Eigen::Index>(a.size());
    spec.alpha.resize(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto& row = a[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw InputError("state spec: alpha must be square");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        spec.alpha(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
      }
    }
    spec.gamma = j.value("gamma", 1.0);
    if (!(spec.gamma > 0.0 && spec.gamma <= 1.0)) {
      throw InputError("state spec: gamma must lie in (0, 1]");
    }
    std::string model = "none";
    if (j.contains("noise")) model = j.at("noise").at("model").get<std::string>();
    if (model == "none") {
      spec.noise = NoiseFree{};
    } else if (model == "white") {
      spec.noise = WhiteNoise{};
    } else if (model == "incoherent") {
      spec.noise = IncoherentNoise{j.at("noise").at("lambda").get<std::vector<double>>()};
    } else {
      throw InputError("state spec: unknown noise model '" + model + "'");
    }
    if (spec.gamma < 1.0 && std::holds_alternative<NoiseFree>(spec.noise)) {
      throw InputError("state spec: gamma < 1 requires a noise model");
    }
    return spec;
  } catch (const json::exception& e) {
    throw InputError(std::string("state spec: ") + e.what());
  }
}

DensityMatrix build_mc_state(const StateSpec& spec, const NumericPolicy& policy) {
  return make_mc_state(spec.alpha, policy);
}

DensityMatrix build_state(const StateSpec& spec, const NumericPolicy& policy) {
  auto rho_mc = build_mc_state(spec, policy);
  if (spec.gamma == 1.0 && std::holds_alternative<NoiseFree>(spec.noise)) return rho_mc;
  const std::size_t d = rho_mc.dim_subsystem();
  std::vector<double> lambda;
  if (std::holds_alternative<WhiteNoise>(spec.noise)) {
    lambda.assign(d * (d - 1), 1.0 / static_cast<double>(d * (d - 1)));
  } else if (const auto* inc = std::get_if<IncoherentNoise>(&spec.noise)) {
    lambda = inc->lambda;
  } else {
    return rho_mc;
  }
  if (lambda.size() != d * (d - 1)) {
    throw InputError("state spec: lambda must have d(d-1) entries");
  }
  return mix(rho_mc, make_noise_state(lambda, policy), spec.gamma, policy);
}

json report_to_json(const CertificationReport& report) {
  json warnings = json::array();
  for (const auto& n : report.warnings) {
    warnings.push_back({{"code", n.code}, {"message", n.message}});
  }
  return {{"d", report.d},
          {"purity_mc", report.purity_mc},
          {"neg_entropy_bound", report.neg_entropy_bound},
          {"ree_lower_bound", report.ree_lower_bound},
          {"d_star", report.d_star},
          {"mutual_info_lower_bound", report.mutual_info_lower_bound},
          {"diagnostics",
           {{"extremal_spectrum_majorizes_zeta",
             report.diagnostics.extremal_spectrum_majorizes_zeta},
            {"phi_a", report.diagnostics.phi_a},
            {"phi_x", report.diagnostics.phi_x}}},
          {"warnings", std::move(warnings)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << x;
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

}  // namespace mcbound::io
