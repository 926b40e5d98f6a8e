#include "mcbound/photonics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mcbound/errors.hpp"
#include "mcbound/sampling.hpp"

namespace mcbound::photonics {

namespace {

void check_norm(double norm_sq, double tol, const char* what) {
  if (std::abs(norm_sq - 1.0) > tol) {
    std::ostringstream os;
    os << what << ": squared norm " << norm_sq << " is not 1";
    throw InputError(os.str());
  }
}

Rng seeded(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return Rng(seq);
}

struct EigenPair {
  Eigen::VectorXd values;
  CMatrix vectors;
};

EigenPair eigen_decompose(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw EigenSolverError("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// sum_jk psi_j phi_k |<phi_k|psi_j>|^2 over two Hermitian operators.
double mixture_overlap(const CMatrix& a, const CMatrix& b) {
  const auto ea = eigen_decompose(a);
  const auto eb = eigen_decompose(b);
  const CMatrix overlaps = eb.vectors.adjoint() * ea.vectors;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < overlaps.rows(); ++k) {
    for (Eigen::Index j = 0; j < overlaps.cols(); ++j) {
      acc += eb.values(k) * ea.values(j) * std::norm(overlaps(k, j));
    }
  }
  return acc;
}

double outside_correlated_mass(const DensityMatrix& rho) {
  const auto prof = correlation_profile(rho);
  return prof.q;
}

CMatrix correlated_block(const DensityMatrix& rho) {
  const std::size_t d = rho.dim_subsystem();
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix block(n, n);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      block(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) =
          rho.element(u, u, v, v);
    }
  }
  return block;
}

}  // namespace

TwoPhotonState::TwoPhotonState(std::vector<Complex> amplitudes, double tol)
    : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw InputError("TwoPhotonState: no amplitudes");
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  check_norm(s, tol, "TwoPhotonState");
}

BipartiteTwoPhotonState::BipartiteTwoPhotonState(CMatrix amplitudes, double tol)
    : amps_(std::move(amplitudes)) {
  if (amps_.rows() == 0 || amps_.rows() != amps_.cols()) {
    throw InputError("BipartiteTwoPhotonState: amplitudes must be a non-empty d x d matrix");
  }
  check_norm(amps_.squaredNorm(), tol, "BipartiteTwoPhotonState");
}

BipartiteTwoPhotonState::BipartiteTwoPhotonState(const TwoPhotonState& correlated)
    : amps_(CMatrix::Zero(static_cast<Eigen::Index>(correlated.dim()),
                          static_cast<Eigen::Index>(correlated.dim()))) {
  for (std::size_t m = 0; m < correlated.dim(); ++m) {
    const auto i = static_cast<Eigen::Index>(m);
    amps_(i, i) = correlated.amplitudes()[m];
  }
}

double FockVector::norm() const {
  double s = 0.0;
  for (const auto& [key, amp] : terms_) s += std::norm(amp);
  return std::sqrt(s);
}

void FockVector::add_monomial(Key key, Complex coefficient) {
  if (finalized_) throw InputError("FockVector: already finalized");
  std::sort(key.begin(), key.end());
  terms_[std::move(key)] += coefficient;
}

void FockVector::finalize() {
  if (finalized_) return;
  for (auto& [key, amp] : terms_) {
    // (c+)^n |vac> = sqrt(n!) |n>
    double factor = 1.0;
    for (auto it = key.begin(); it != key.end();) {
      const auto next = std::find_if(it, key.end(), [&](const Mode& m) { return m != *it; });
      const auto n = static_cast<double>(next - it);
      factor *= std::sqrt(std::tgamma(n + 1.0));
      it = next;
    }
    amp *= factor;
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
  finalized_ = true;
}

std::size_t FockVector::photons_in(const Key& key, Port port) {
  return static_cast<std::size_t>(
      std::count_if(key.begin(), key.end(), [port](const Mode& m) { return m.port == port; }));
}

FockVector beamsplitter_output(const BipartiteTwoPhotonState& j,
                               const BipartiteTwoPhotonState& k) {
  if (j.dim() != k.dim()) throw InputError("beamsplitter_output: dimension mismatch");
  const auto n = static_cast<Eigen::Index>(j.dim());

  // a+ -> (c+ + d+)/sqrt2 ; b+ -> (c+ - d+)/sqrt2. Each of the four input
  // creation operators picks an output port; 16 port assignments per term.
  struct Op {
    int mode;
    bool from_b;
  };
  FockVector out;
  for (Eigen::Index ia = 0; ia < n; ++ia) {
    for (Eigen::Index ja = 0; ja < n; ++ja) {
      const Complex alpha = j.amplitudes()(ia, ja);
      if (alpha == Complex{0.0, 0.0}) continue;
      for (Eigen::Index ib = 0; ib < n; ++ib) {
        for (Eigen::Index jb = 0; jb < n; ++jb) {
          const Complex beta = k.amplitudes()(ib, jb);
          if (beta == Complex{0.0, 0.0}) continue;
          const std::array<Op, 4> ops{{{static_cast<int>(ia) + 1, false},
                                       {-(static_cast<int>(ja) + 1), false},
                                       {static_cast<int>(ib) + 1, true},
                                       {-(static_cast<int>(jb) + 1), true}}};
          const Complex base = alpha * beta * 0.25;  // (1/sqrt2)^4
          for (unsigned mask = 0; mask < 16; ++mask) {
            FockVector::Key key;
            key.reserve(4);
            double sign = 1.0;
            for (unsigned q = 0; q < 4; ++q) {
              const bool to_d = (mask >> q) & 1U;
              key.push_back({to_d ? Port::D : Port::C, ops[q].mode});
              if (to_d && ops[q].from_b) sign = -sign;
            }
            out.add_monomial(std::move(key), sign * base);
          }
        }
      }
    }
  }
  out.finalize();
  return out;
}

double parity_expectation_pure(const TwoPhotonState& j, const TwoPhotonState& k) {
  if (j.dim() != k.dim()) throw InputError("parity_expectation_pure: dimension mismatch");
  Complex inner{0.0, 0.0};
  for (std::size_t m = 0; m < j.dim(); ++m) {
    inner += std::conj(k.amplitudes()[m]) * j.amplitudes()[m];
  }
  return std::norm(inner);
}

double fock_brute_force_parity(const BipartiteTwoPhotonState& j,
                               const BipartiteTwoPhotonState& k) {
  if (j.dim() > 12) throw InputError("fock_brute_force_parity: d must be <= 12");
  const auto out = beamsplitter_output(j, k);
  double parity = 0.0;
  for (const auto& [key, amp] : out.terms()) {
    const bool even = FockVector::photons_in(key, Port::C) % 2 == 0;
    parity += (even ? 1.0 : -1.0) * std::norm(amp);
  }
  return parity;
}

double fock_brute_force_parity(const TwoPhotonState& j, const TwoPhotonState& k) {
  return fock_brute_force_parity(BipartiteTwoPhotonState(j), BipartiteTwoPhotonState(k));
}

double parity_expectation_mixed(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                double support_tol) {
  if (rho1.dim_subsystem() != rho2.dim_subsystem()) {
    throw InputError("parity_expectation_mixed: dimension mismatch");
  }
  for (const auto* rho : {&rho1, &rho2}) {
    if (const double q = outside_correlated_mass(*rho); q > support_tol) {
      std::ostringstream os;
      os << "parity_expectation_mixed: state has " << q
         << " population outside the correlated subspace";
      throw InputError(os.str());
    }
  }
  return mixture_overlap(correlated_block(rho1), correlated_block(rho2));
}

double parity_expectation_two_photon(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim_subsystem() != rho2.dim_subsystem()) {
    throw InputError("parity_expectation_two_photon: dimension mismatch");
  }
  return mixture_overlap(rho1.matrix(), rho2.matrix());
}

ParityCounts simulate_parity_counts(const DensityMatrix& rho, std::uint64_t shots,
                                    std::uint64_t seed) {
  if (shots == 0) throw InputError("simulate_parity_counts: shots must be > 0");
  const double parity = outside_correlated_mass(rho) <= 1e-9
                            ? parity_expectation_mixed(rho, rho)
                            : parity_expectation_two_photon(rho, rho);
  const double p_even = std::clamp(0.5 * (1.0 + parity), 0.0, 1.0);
  auto rng = seeded(seed);
  ParityCounts out;
  out.even = sample_binomial(shots, p_even, rng);
  out.odd = shots - out.even;
  return out;
}

std::vector<std::uint64_t> simulate_coincidence_counts(const DensityMatrix& rho,
                                                       std::uint64_t shots,
                                                       std::uint64_t seed) {
  if (shots == 0) throw InputError("simulate_coincidence_counts: shots must be > 0");
  auto probs = diagonal(rho);
  for (auto& p : probs) p = std::max(p, 0.0);
  auto rng = seeded(seed);
  return sample_multinomial(probs, shots, rng);
}

}  // namespace mcbound::photonics
