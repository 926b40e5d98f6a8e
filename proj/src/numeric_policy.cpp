#include "mcbound/numeric_policy.hpp"

#include <cstdlib>
#include <string>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

void override_from_env(const char* name, double& field) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    std::size_t used = 0;
    const double v = std::stod(raw, &used);
    if (used != std::string(raw).size() || !(v >= 0.0)) throw std::invalid_argument(raw);
    field = v;
  } catch (const std::exception&) {
    throw InputError(std::string(name) + ": not a nonnegative number: '" + raw + "'");
  }
}

}  // namespace

NumericPolicy NumericPolicy::with_env_overrides(NumericPolicy base) {
  override_from_env("MCBOUND_HERMITIAN_TOL", base.hermitian_tol);
  override_from_env("MCBOUND_TRACE_TOL", base.trace_tol);
  override_from_env("MCBOUND_PSD_TOL", base.psd_tol);
  override_from_env("MCBOUND_SUM_TOL", base.sum_tol);
  override_from_env("MCBOUND_CLAMP_TOL", base.clamp_tol);
  override_from_env("MCBOUND_MC_THRESHOLD", base.mc_threshold);
  override_from_env("MCBOUND_DSTAR_TOL", base.dstar_tol);
  return base;
}

NumericPolicy NumericPolicy::with_env_overrides() { return with_env_overrides(NumericPolicy{}); }

}  // namespace mcbound
