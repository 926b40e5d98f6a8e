#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mcbound/numeric_policy.hpp"

namespace mcbound {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Bipartite d x d density operator, stored as a d^2 x d^2 complex matrix.
///
/// Basis ordering: ket |i,j> (0-based i on subsystem A, j on B) sits at
/// flat index i*d + j. Construction validates Hermiticity, unit trace and
/// positive semidefiniteness against a NumericPolicy; after that the value
/// is immutable.
class DensityMatrix {
 public:
  DensityMatrix(std::size_t dim_subsystem, CMatrix entries,
                const NumericPolicy& policy = {});

  std::size_t dim_subsystem() const noexcept { return d_; }
  std::size_t dim() const noexcept { return d_ * d_; }
  const CMatrix& matrix() const noexcept { return m_; }

  /// <i,j|rho|k,l>, 0-based.
  Complex element(std::size_t i, std::size_t j, std::size_t k,
                  std::size_t l) const {
    return m_(index(i, j), index(k, l));
  }

  /// <i,j|rho|i,j> as a real probability.
  double population(std::size_t i, std::size_t j) const {
    return m_(index(i, j), index(i, j)).real();
  }

  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    return i * d_ + j;
  }

 private:
  std::size_t d_;
  CMatrix m_;
};

/// Real eigenvalues in non-increasing order.
struct Spectrum {
  std::vector<double> values;
};

/// Computational-basis populations split into the correlated |k,k> entries
/// (zeta) and the uncorrelated |i,j>, i != j, entries (lambda_offdiag, in
/// lexicographic (i,j) order). q is the total uncorrelated mass.
struct CorrelationProfile {
  std::vector<double> zeta;
  std::vector<double> lambda_offdiag;
  double q = 0.0;
};

enum class Subsystem { A, B };

/// rho_MC = sum_uv alpha_uv |uu><vv|. `alpha` must itself be a d x d
/// density matrix.
DensityMatrix make_mc_state(const CMatrix& alpha,
                            const NumericPolicy& policy = {});

/// Diagonal noise operator sum_{i != j} lambda_ij |i,j><i,j|. The subsystem
/// dimension is inferred from lambda.size() == d(d-1).
DensityMatrix make_noise_state(std::span<const double> lambda_offdiag,
                               const NumericPolicy& policy = {});

/// gamma * rho_mc + (1 - gamma) * rho_noise.
DensityMatrix mix(const DensityMatrix& rho_mc, const DensityMatrix& rho_noise,
                  double gamma, const NumericPolicy& policy = {});

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Throws EigenSolverError if the solver fails.
Spectrum eigenvalues(const DensityMatrix& rho, const NumericPolicy& policy = {});

/// Eigenvalues of an arbitrary Hermitian matrix, non-increasing, no cleanup.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);

/// x log2 x with 0 log 0 = 0.
double xlog2x(double x);

double von_neumann_entropy(const DensityMatrix& rho,
                           const NumericPolicy& policy = {});

/// Reduced d x d state after tracing out `traced_out`.
CMatrix partial_trace(const DensityMatrix& rho, Subsystem traced_out);

bool is_maximally_correlated(const DensityMatrix& rho, double tol);

CorrelationProfile correlation_profile(const DensityMatrix& rho);

/// Diagonal <i,j|rho|i,j> in flat-index order.
std::vector<double> diagonal(const DensityMatrix& rho);

/// True iff sorted(a) majorizes sorted(b): every partial sum of a is at
/// least the matching partial sum of b (within tol) and the totals agree.
/// The shorter array is padded with zeros.
bool majorizes(std::span<const double> a, std::span<const double> b,
               double tol = 1e-9);

}  // namespace mcbound
