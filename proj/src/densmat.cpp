#include "mcbound/densmat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "mcbound/errors.hpp"

namespace mcbound {

namespace {

double hermitian_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Validates the three density-operator invariants on a square matrix.
void validate_density(const CMatrix& m, const NumericPolicy& policy,
                      const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InputError(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw InputError(std::string(what) + ": non-finite entry");
  }
  if (const double h = hermitian_defect(m); h > policy.hermitian_tol) {
    std::ostringstream os;
    os << what << ": not Hermitian (max defect " << h << ")";
    throw InputError(os.str());
  }
  if (const Complex tr = m.trace();
      std::abs(tr.real() - 1.0) > policy.trace_tol ||
      std::abs(tr.imag()) > policy.trace_tol) {
    std::ostringstream os;
    os << what << ": trace " << tr.real() << " is not 1";
    throw InputError(os.str());
  }
  const auto ev = hermitian_eigenvalues(m);
  if (ev.back() < -policy.psd_tol) {
    std::ostringstream os;
    os << what << ": not positive semidefinite (min eigenvalue " << ev.back()
       << ")";
    throw InputError(os.str());
  }
}

void validate_probabilities(std::span<const double> p,
                            const NumericPolicy& policy, const char* what) {
  double total = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) {
      throw InputError(std::string(what) + ": entries must be finite and >= 0");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > policy.sum_tol) {
    std::ostringstream os;
    os << what << ": entries sum to " << total << ", expected 1";
    throw InputError(os.str());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t dim_subsystem, CMatrix entries,
                             const NumericPolicy& policy)
    : d_(dim_subsystem), m_(std::move(entries)) {
  if (d_ == 0) throw InputError("DensityMatrix: subsystem dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(d_ * d_);
  if (m_.rows() != n || m_.cols() != n) {
    std::ostringstream os;
    os << "DensityMatrix: expected " << n << "x" << n << " entries, got "
       << m_.rows() << "x" << m_.cols();
    throw InputError(os.str());
  }
  validate_density(m_, policy, "DensityMatrix");
}

DensityMatrix make_mc_state(const CMatrix& alpha, const NumericPolicy& policy) {
  validate_density(alpha, policy, "make_mc_state(alpha)");
  const auto d = static_cast<std::size_t>(alpha.rows());
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d * d),
                            static_cast<Eigen::Index>(d * d));
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      m(static_cast<Eigen::Index>(u * d + u), static_cast<Eigen::Index>(v * d + v)) =
          alpha(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
    }
  }
  return DensityMatrix(d, std::move(m), policy);
}

DensityMatrix make_noise_state(std::span<const double> lambda_offdiag,
                               const NumericPolicy& policy) {
  // n = d(d-1)  =>  d = (1 + sqrt(1 + 4n)) / 2
  const std::size_t n = lambda_offdiag.size();
  const auto d = static_cast<std::size_t>(
      std::llround((1.0 + std::sqrt(1.0 + 4.0 * static_cast<double>(n))) / 2.0));
  if (n == 0 || d * (d - 1) != n) {
    throw InputError("make_noise_state: lambda length must be d(d-1) for some d >= 2");
  }
  validate_probabilities(lambda_offdiag, policy, "make_noise_state");
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d * d),
                            static_cast<Eigen::Index>(d * d));
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const auto idx = static_cast<Eigen::Index>(i * d + j);
      m(idx, idx) = lambda_offdiag[k++];
    }
  }
  return DensityMatrix(d, std::move(m), policy);
}

DensityMatrix mix(const DensityMatrix& rho_mc, const DensityMatrix& rho_noise,
                  double gamma, const NumericPolicy& policy) {
  if (rho_mc.dim_subsystem() != rho_noise.dim_subsystem()) {
    throw InputError("mix: subsystem dimensions differ");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw InputError("mix: gamma must lie in [0, 1]");
  }
  if (!is_maximally_correlated(rho_mc, policy.psd_tol)) {
    throw InputError("mix: first operand is not maximally correlated");
  }
  const std::size_t d = rho_noise.dim_subsystem();
  const CMatrix& noise = rho_noise.matrix();
  if (!noise.isDiagonal(policy.hermitian_tol)) {
    throw InputError("mix: noise operator must be diagonal");
  }
  for (std::size_t k = 0; k < d; ++k) {
    if (std::abs(rho_noise.population(k, k)) > policy.psd_tol) {
      throw InputError("mix: noise operator has weight on correlated entries");
    }
  }
  if (gamma == 1.0) return rho_mc;
  if (gamma == 0.0) return rho_noise;
  CMatrix m = gamma * rho_mc.matrix() + (1.0 - gamma) * noise;
  return DensityMatrix(d, std::move(m), policy);
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum_rc |rho_rc|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("Hermitian eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Spectrum eigenvalues(const DensityMatrix& rho, const NumericPolicy& policy) {
  auto values = hermitian_eigenvalues(rho.matrix());
  double total = 0.0;
  for (double& v : values) {
    if (v < -policy.psd_tol) {
      throw InputError("eigenvalues: negative eigenvalue beyond tolerance");
    }
    if (v < 0.0) v = 0.0;
    total += v;
  }
  for (double& v : values) v /= total;
  return Spectrum{std::move(values)};
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) s -= xlog2x(x);
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, const NumericPolicy& policy) {
  const auto spec = eigenvalues(rho, policy);
  return std::max(0.0, shannon_entropy(spec.values));
}

CMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out) {
  const std::size_t d = rho.dim_subsystem();
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < d; ++k) {
        acc += traced_out == Subsystem::B ? rho.element(r, k, c, k)
                                          : rho.element(k, r, k, c);
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
    }
  }
  return out;
}

bool is_maximally_correlated(const DensityMatrix& rho, double tol) {
  const std::size_t d = rho.dim_subsystem();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j && rho.population(i, j) > tol) return false;
    }
  }
  return true;
}

CorrelationProfile correlation_profile(const DensityMatrix& rho) {
  const std::size_t d = rho.dim_subsystem();
  CorrelationProfile prof;
  prof.zeta.reserve(d);
  prof.lambda_offdiag.reserve(d * (d - 1));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double p = rho.population(i, j);
      if (i == j) {
        prof.zeta.push_back(p);
      } else {
        prof.lambda_offdiag.push_back(p);
        prof.q += p;
      }
    }
  }
  return prof;
}

std::vector<double> diagonal(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    out[static_cast<std::size_t>(k)] = m(k, k).real();
  }
  return out;
}

bool majorizes(std::span<const double> a, std::span<const double> b, double tol) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  sa.resize(n, 0.0);
  sb.resize(n, 0.0);
  std::sort(sa.begin(), sa.end(), std::greater<>());
  std::sort(sb.begin(), sb.end(), std::greater<>());
  double pa = 0.0;
  double pb = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    pa += sa[k];
    pb += sb[k];
    if (pa < pb - tol) return false;
  }
  return std::abs(pa - pb) <= tol;
}

}  // namespace mcbound
