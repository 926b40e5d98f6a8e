#pragma once

#include <string>
#include <vector>

namespace mcbound {

/// Tolerances shared by every module. One object, passed by const
/// reference; the defaults below are what the library and CLI use unless
/// overridden.
struct NumericPolicy {
  double hermitian_tol = 1e-10;  ///< |rho_rc - conj(rho_cr)|
  double trace_tol = 1e-10;      ///< |Tr rho - 1|
  double psd_tol = 1e-10;        ///< smallest admissible eigenvalue is -psd_tol
  double sum_tol = 1e-9;         ///< probability vectors must sum to 1 within this
  double clamp_tol = 0.05;       ///< purity may leave [1/K, 1] by this much and be clamped
  double mc_threshold = 1e-3;    ///< q/total at or below this declares a noise-free state
  double dstar_tol = 1e-9;       ///< slack absorbed before rounding 2^D up

  /// Copy of `base` with any of the MCBOUND_* environment variables applied:
  /// MCBOUND_HERMITIAN_TOL, MCBOUND_TRACE_TOL, MCBOUND_PSD_TOL,
  /// MCBOUND_SUM_TOL, MCBOUND_CLAMP_TOL, MCBOUND_MC_THRESHOLD,
  /// MCBOUND_DSTAR_TOL. Throws InputError on an unparsable value.
  static NumericPolicy with_env_overrides(NumericPolicy base);
  static NumericPolicy with_env_overrides();
};

/// A structured, non-fatal notice attached to results (clamping, threshold
/// decisions, model assumptions).
struct Notice {
  std::string code;
  std::string message;

  friend bool operator==(const Notice&, const Notice&) = default;
};

using Notices = std::vector<Notice>;

}  // namespace mcbound
