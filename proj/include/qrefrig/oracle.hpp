#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qrefrig/media.hpp"

namespace qrefrig::oracle {

/// Truncated harmonic-basis diagonalization settings.
struct BasisConfig {
  std::size_t size = 128;       // starting basis size N (>= 8)
  double trust_fraction = 0.5;  // only the lowest fraction of levels may count as converged
  double level_tol = 1e-8;      // |E_k(N) - E_k(2N)| below this marks level k converged
  std::size_t max_size = 1024;  // doubling stops here

  void validate() const;
};

struct QuadratureConfig {
  double cutoff = 40.0;   // integrate over beta V(x) <= cutoff
  double rel_tol = 1e-10;
  int max_levels = 30;
};

/// <j|x|k> in the harmonic basis of frequency omega: sqrt((k+1)/(2 omega))
/// on the first off-diagonals.
Eigen::MatrixXd position_matrix(double omega, std::size_t n);

/// Matrix of H = diag((k + 1/2) omega) + lambda x^4 on the lowest n basis
/// states, with exact x^4 matrix elements.
Eigen::MatrixXd quartic_hamiltonian(double omega, double lambda, std::size_t n);

/// Ascending eigenvalues of quartic_hamiltonian.
Eigen::VectorXd diagonalize(double omega, double lambda, std::size_t n);

/// Converged low-lying levels of the quartic oscillator. Diagonalizes at N
/// and 2N; the basis is doubled (up to max_size) until at least
/// `min_levels` levels are converged. Returns the 2N eigenvalues of the
/// converged prefix. Throws ConvergenceError when fewer than
/// max(2, min_levels) levels converge.
Spectrum ao_exact_spectrum(const MediumParams& p, const BasisConfig& cfg = {},
                           std::size_t min_levels = 2);

/// Exact quartic levels, chosen so a Gibbs sum at `beta` reaches the tail
/// bound (the basis grows until it does).
Spectrum ao_exact_thermal_spectrum(const MediumParams& p, double beta, const BasisConfig& cfg = {});

/// sum_n exp(-beta E_n) over the spectrum; TruncationError if the tail bound
/// is unmet.
double gibbs_sum_exact(const Spectrum& spec, double beta);

/// Phase-space partition function (1/2pi) sqrt(2pi/beta) int exp(-beta V(x)) dx
/// with V = w^2 x^2/2 + lambda x^4, by composite Simpson with interval halving.
double classical_partition_quadrature(double beta, const MediumParams& p,
                                      const QuadratureConfig& cfg = {});

}  // namespace qrefrig::oracle
