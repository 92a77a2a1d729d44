#pragma once

// Resonance energies by complex rotation x -> x e^{i theta} in the
// harmonic-oscillator basis. The rotated Hamiltonian
//
//   e^{-2i theta} p^2/2 + e^{2i theta} x^2/2 + c e^{i M theta} x^M
//
// is complex symmetric; for theta > 0 its resonance eigenvalues carry
// Im E < 0 and are independent of theta once uncovered.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/oscillator.hpp"

namespace anharmonic {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// x^M in the first N oscillator states of frequency omega. The power is
/// formed in an (N + M)-state space before truncation so the last rows are
/// not polluted by the cut.
inline Eigen::MatrixXd position_power_matrix(int M, int N, double omega = 1.0) {
  if (M < 0 || N < 1) throw DomainError("position_power_matrix: bad dimensions");
  const int D = N + M;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(D, D);
  const double scale = 1.0 / std::sqrt(2.0 * omega);
  for (int m = 0; m + 1 < D; ++m) {
    x(m, m + 1) = scale * std::sqrt(static_cast<double>(m + 1));
    x(m + 1, m) = x(m, m + 1);
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(D, D);
  for (int i = 0; i < M; ++i) out = (out * x).eval();
  Eigen::MatrixXd block = out.topLeftCorner(N, N);
  return 0.5 * (block + block.transpose());
}

/// p^2 = (omega/2)(2 a^+ a + 1 - a^+^2 - a^2), exact per element.
inline Eigen::MatrixXd momentum_squared_matrix(int N, double omega = 1.0) {
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(N, N);
  for (int m = 0; m < N; ++m) {
    p2(m, m) = omega * (m + 0.5);
    if (m + 2 < N) {
      p2(m, m + 2) = -0.5 * omega * std::sqrt(static_cast<double>(m + 1) * (m + 2));
      p2(m + 2, m) = p2(m, m + 2);
    }
  }
  return p2;
}

/// Coefficients of kinetic * p^2/2 + harmonic * x^2/2 + power * x^M before
/// rotation.
struct HamiltonianTerms {
  int degree_M = 3;
  cplx kinetic{1.0, 0.0};
  cplx harmonic{1.0, 0.0};
  cplx power{0.0, 0.0};
};

inline ComplexMatrix rotated_hamiltonian(const HamiltonianTerms& terms, double theta, int N,
                                         double omega = 1.0) {
  const cplx i(0.0, 1.0);
  const cplx kin = terms.kinetic * std::exp(-2.0 * i * theta);
  const cplx harm = terms.harmonic * std::exp(2.0 * i * theta);
  const cplx pw = terms.power * std::exp(i * (terms.degree_M * theta));
  ComplexMatrix H = (0.5 * kin) * momentum_squared_matrix(N, omega).cast<cplx>();
  if (harm != cplx(0.0))
    H += (0.5 * harm) * position_power_matrix(2, N, omega).cast<cplx>();
  if (pw != cplx(0.0)) H += pw * position_power_matrix(terms.degree_M, N, omega).cast<cplx>();

  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw DomainError("rotated Hamiltonian is not complex symmetric");
  return H;
}

inline void require_basis(int N, int n, double theta) {
  if (N < 16) throw DomainError("basis size N must be >= 16, got " + std::to_string(N));
  if (N < 8 * (n + 1))
    throw DomainError("basis size N = " + std::to_string(N) + " is too small for level " +
                      std::to_string(n) + " (need N >= 8(n+1))");
  if (!(std::fabs(theta) < std::numbers::pi / 2))
    throw DomainError("rotation angle must lie in (-pi/2, pi/2)");
}

inline HamiltonianTerms oscillator_terms(const OscillatorSpec& spec) {
  spec.validate();
  HamiltonianTerms t;
  t.degree_M = spec.degree_M;
  t.power = spec.perturbation_strength();
  return t;
}

/// Complex-rotated Hamiltonian of `spec` in the first N oscillator states.
inline ComplexMatrix build_hamiltonian(const OscillatorSpec& spec, double theta, int N) {
  require_basis(N, spec.level_n, theta);
  return rotated_hamiltonian(oscillator_terms(spec), theta, N);
}

/// Rotation used when none is given: 0.4 (odd) or 0.35 (even) in the
/// unstable region, 0 otherwise (stable quartic, PT-symmetric cubic).
inline double default_theta(const OscillatorSpec& spec) {
  if (!spec.in_unstable_region()) return 0.0;
  return spec.is_odd() ? 0.4 : 0.35;
}

struct ResonanceOptions {
  int homotopy_steps = 4;            ///< geometric ladder g/8 -> g
  double stability_threshold = 1e-6; ///< relative to max(1, |E|)
  bool compute_stability = true;
  double width_floor = 1e-12;        ///< |Im E| below this is not resolved
};

struct ResonanceResult {
  cplx energy;
  int level_n = 0;
  int basis_size_N = 0;
  double rotation_theta = 0.0;
  double coupling_g = 0.0;
  double stability = 0.0;  ///< |E(N) - E(N/2)|
  double overlap = 0.0;    ///< squared overlap with the rotated harmonic state n
  bool converged = true;
  bool width_resolved = true;
};

/// Eigenvector of the rotated harmonic oscillator for level n, by inverse
/// iteration at shift n + 1/2.
inline ComplexVector rotated_harmonic_state(int n, double theta, int N) {
  HamiltonianTerms h0;
  h0.power = 0.0;
  ComplexMatrix H0 = rotated_hamiltonian(h0, theta, N);
  H0.diagonal().array() -= cplx(n + 0.5 + 1e-7, 0.0);
  Eigen::PartialPivLU<ComplexMatrix> lu(H0);
  ComplexVector v = ComplexVector::Zero(N);
  v(n) = 1.0;
  for (int it = 0; it < 3; ++it) {
    v = lu.solve(v);
    v /= v.norm();
  }
  return v;
}

namespace detail {

struct TrackedLevel {
  cplx energy;
  double overlap = 0.0;
};

inline double squared_overlap(const ComplexVector& a, const ComplexVector& b) {
  const double num = std::norm(a.dot(b));
  return num / (a.squaredNorm() * b.squaredNorm());
}

inline int nearest_index(const ComplexVector& values, cplx target) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < values.size(); ++i) {
    const double d = std::abs(values(i) - target);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

/// Overlap selection at the bottom of the homotopy ladder, nearest-neighbour
/// tracking up to the target coupling.
inline TrackedLevel track_level(const OscillatorSpec& spec, int n, int N, double theta,
                                int steps) {
  const double g = spec.require_coupling();
  steps = std::max(1, steps);
  const ComplexVector reference = rotated_harmonic_state(n, theta, N);

  auto coupling_at = [&](int k) {
    if (steps == 1) return g;
    return g / 8.0 * std::pow(8.0, static_cast<double>(k) / (steps - 1));
  };
  auto hamiltonian_at = [&](double gk) {
    OscillatorSpec s = spec;
    s.coupling_g = gk;
    return rotated_hamiltonian(oscillator_terms(s), theta, N);
  };

  TrackedLevel out;
  {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(hamiltonian_at(coupling_at(0)), true);
    if (es.info() != Eigen::Success)
      throw ConvergenceError("eigensolver failed", std::numeric_limits<double>::quiet_NaN());
    int best = 0;
    double best_ov = -1.0;
    for (int i = 0; i < N; ++i) {
      const double ov = squared_overlap(reference, es.eigenvectors().col(i));
      if (ov > best_ov) {
        best_ov = ov;
        best = i;
      }
    }
    out.energy = es.eigenvalues()(best);
    out.overlap = best_ov;
  }
  for (int k = 1; k < steps; ++k) {
    const bool last = k == steps - 1;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(hamiltonian_at(coupling_at(k)), last);
    if (es.info() != Eigen::Success)
      throw ConvergenceError("eigensolver failed", std::numeric_limits<double>::quiet_NaN());
    const int idx = nearest_index(es.eigenvalues(), out.energy);
    out.energy = es.eigenvalues()(idx);
    if (last) out.overlap = squared_overlap(reference, es.eigenvectors().col(idx));
  }
  return out;
}

}  // namespace detail

/// Resonance (or PT-real) eigenvalue of level n at spec.coupling_g.
inline ResonanceResult resonance_energy(const OscillatorSpec& spec, int n, int N, double theta,
                                        const ResonanceOptions& opts = {}) {
  spec.validate();
  require_basis(N, n, theta);
  const double g = spec.require_coupling();

  ResonanceResult out;
  out.level_n = n;
  out.basis_size_N = N;
  out.rotation_theta = theta;
  out.coupling_g = g;

  const auto level = detail::track_level(spec, n, N, theta, opts.homotopy_steps);
  out.energy = level.energy;
  out.overlap = level.overlap;

  if (opts.compute_stability) {
    const int half = N / 2;
    if (half >= 16 && half >= 8 * (n + 1)) {
      const auto coarse = detail::track_level(spec, n, half, theta, opts.homotopy_steps);
      out.stability = std::abs(out.energy - coarse.energy);
    } else {
      out.stability = std::numeric_limits<double>::infinity();
    }
    out.converged = out.stability <= opts.stability_threshold * std::max(1.0, std::abs(out.energy));
  }
  if (spec.in_unstable_region() && std::fabs(out.energy.imag()) < opts.width_floor)
    out.width_resolved = false;
  return out;
}

inline ResonanceResult resonance_energy(const OscillatorSpec& spec, const ResonanceOptions& opts = {}) {
  return resonance_energy(spec, spec.level_n, 256, default_theta(spec), opts);
}

/// |E(theta) - conj(E(-theta))|: opposite rotations select complex-conjugate
/// resonances.
inline double conjugate_branch_check(const OscillatorSpec& spec, int n, int N, double theta) {
  ResonanceOptions opts;
  opts.compute_stability = false;
  const auto plus = resonance_energy(spec, n, N, theta, opts);
  const auto minus = resonance_energy(spec, n, N, -theta, opts);
  return std::abs(plus.energy - std::conj(minus.energy));
}

struct StrongCouplingResult {
  cplx coefficient;      ///< e_n e^{-i pi/5}
  double modulus = 0.0;  ///< e_n
  double phase = 0.0;
  double phase_error = 0.0;  ///< |phase + pi/5|
  double stability = 0.0;    ///< relative change of e_n under N -> N/2
  bool converged = true;
};

namespace detail {

inline std::vector<cplx> pure_cubic_levels(int N, double theta) {
  HamiltonianTerms t;
  t.degree_M = 3;
  t.harmonic = 0.0;
  t.power = 1.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(rotated_hamiltonian(t, theta, N), false);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("eigensolver failed", std::numeric_limits<double>::quiet_NaN());
  const double target = -std::numbers::pi / 5.0;
  std::vector<cplx> out;
  for (int i = 0; i < N; ++i) {
    const cplx z = es.eigenvalues()(i);
    if (std::fabs(std::arg(z) - target) < 1e-3) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  return out;
}

}  // namespace detail

/// Leading strong-coupling coefficient of the cubic, eps_n(g + i0) ~
/// g^{1/5} e_n e^{-i pi/5}, from the rotated pure-power Hamiltonian
/// p^2/2 + x^3 (the harmonic term scales away as g -> infinity).
inline StrongCouplingResult strong_coupling_leading(int M, int n, int N = 256,
                                                    double theta = 0.3) {
  if (M != 3) throw DomainError("strong_coupling_leading is implemented for M = 3");
  if (n < 0) throw DomainError("level n must be nonnegative");
  require_basis(N, n, theta);
  const auto fine = detail::pure_cubic_levels(N, theta);
  const auto coarse = detail::pure_cubic_levels(N / 2, theta);
  if (static_cast<int>(fine.size()) <= n)
    throw ConvergenceError("strong coupling: level not resolved in basis",
                           std::numeric_limits<double>::quiet_NaN());

  StrongCouplingResult out;
  out.coefficient = fine[static_cast<std::size_t>(n)];
  out.modulus = std::abs(out.coefficient);
  out.phase = std::arg(out.coefficient);
  out.phase_error = std::fabs(out.phase + std::numbers::pi / 5.0);
  if (static_cast<int>(coarse.size()) > n)
    out.stability = std::fabs(std::abs(coarse[static_cast<std::size_t>(n)]) - out.modulus) / out.modulus;
  else
    out.stability = std::numeric_limits<double>::infinity();
  out.converged = out.stability < 1e-8 && out.phase_error < 1e-8;
  return out;
}

}  // namespace anharmonic
