#include "qrefrig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qrefrig/errors.hpp"
#include "qrefrig/thermo.hpp"

namespace qrefrig::oracle {

void BasisConfig::validate() const {
  if (size < 8) throw ValidationError("basis size must be at least 8");
  if (!(trust_fraction > 0.0 && trust_fraction <= 1.0)) {
    throw ValidationError("trust_fraction must lie in (0, 1]");
  }
  if (!(level_tol > 0.0)) throw ValidationError("level_tol must be positive");
  if (max_size < size) throw ValidationError("max_size must be >= size");
}

Eigen::MatrixXd position_matrix(double omega, std::size_t n) {
  if (n < 2) throw ValidationError("position matrix needs at least 2 basis states");
  if (!(omega > 0.0)) throw ValidationError("omega must be positive");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k + 1 < dim; ++k) {
    const double el = std::sqrt(static_cast<double>(k + 1) / (2.0 * omega));
    x(k, k + 1) = el;
    x(k + 1, k) = el;
  }
  return x;
}

Eigen::MatrixXd quartic_hamiltonian(double omega, double lambda, std::size_t n) {
  // Four extra states make every <j|x^4|k> with j,k < n exact.
  const Eigen::MatrixXd x = position_matrix(omega, n + 4);
  const Eigen::MatrixXd x2 = x * x;
  const Eigen::MatrixXd x4 = x2 * x2;
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd h = lambda * x4.topLeftCorner(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) h(k, k) += (static_cast<double>(k) + 0.5) * omega;
  // x4 is symmetric up to rounding; force exact symmetry.
  return 0.5 * (h + h.transpose());
}

Eigen::VectorXd diagonalize(double omega, double lambda, std::size_t n) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(quartic_hamiltonian(omega, lambda, n),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver failed");
  return solver.eigenvalues();
}

Spectrum ao_exact_spectrum(const MediumParams& p, const BasisConfig& cfg, std::size_t min_levels) {
  p.validate();
  cfg.validate();
  const std::size_t wanted = std::max<std::size_t>(2, min_levels);

  std::size_t n = cfg.size;
  Eigen::VectorXd coarse = diagonalize(p.omega, p.lambda, n);
  for (;;) {
    const Eigen::VectorXd fine = diagonalize(p.omega, p.lambda, 2 * n);
    const auto trusted = static_cast<std::size_t>(cfg.trust_fraction * static_cast<double>(n));
    std::size_t count = 0;
    while (count < trusted &&
           std::abs(coarse(static_cast<Eigen::Index>(count)) -
                    fine(static_cast<Eigen::Index>(count))) < cfg.level_tol) {
      ++count;
    }
    if (count >= wanted) {
      Spectrum s;
      s.levels.assign(fine.data(), fine.data() + count);
      s.truncation = count;
      s.converged.assign(count, true);
      return s;
    }
    if (2 * n > cfg.max_size) {
      std::ostringstream msg;
      msg << "only " << count << " levels converged (needed " << wanted << ") up to basis size "
          << n << " for omega = " << p.omega << ", lambda = " << p.lambda;
      throw ConvergenceError(msg.str());
    }
    n *= 2;
    coarse = fine;
  }
}

Spectrum ao_exact_thermal_spectrum(const MediumParams& p, double beta, const BasisConfig& cfg) {
  if (!(beta > 0.0)) throw ValidationError("inverse temperature beta must be positive");
  // Harmonic estimate of the number of levels the tail bound needs.
  const double span = -std::log(kGibbsTailBound) + 4.0;
  std::size_t need = static_cast<std::size_t>(std::ceil(span / (beta * p.omega))) + 2;
  for (;;) {
    const Spectrum s = ao_exact_spectrum(p, cfg, need);
    const double e0 = s.levels.front();
    double sum = 0.0;
    for (double e : s.levels) sum += std::exp(-beta * (e - e0));
    if (std::exp(-beta * (s.levels.back() - e0)) < kGibbsTailBound * sum) return s;
    need = s.size() + s.size() / 2 + 1;
  }
}

double gibbs_sum_exact(const Spectrum& spec, double beta) { return gibbs_partition(spec, beta); }

double classical_partition_quadrature(double beta, const MediumParams& p,
                                      const QuadratureConfig& cfg) {
  if (!(beta > 0.0)) throw ValidationError("inverse temperature beta must be positive");
  p.validate();
  const double w2 = p.omega * p.omega;
  // Solve beta (w^2 u / 2 + lambda u^2) = cutoff for u = x_max^2.
  const double c = cfg.cutoff / beta;
  const double u = p.lambda > 0.0
                       ? (-0.5 * w2 + std::sqrt(0.25 * w2 * w2 + 4.0 * p.lambda * c)) / (2.0 * p.lambda)
                       : 2.0 * c / w2;
  const double x_max = std::sqrt(u);
  auto f = [&](double x) {
    const double x2 = x * x;
    return std::exp(-beta * (0.5 * w2 * x2 + p.lambda * x2 * x2));
  };

  // Simpson on [0, x_max]; the integrand is even.
  double prev = 0.0;
  std::size_t intervals = 2;
  for (int level = 1; level <= cfg.max_levels; ++level, intervals *= 2) {
    const double h = x_max / static_cast<double>(intervals);
    double sum = f(0.0) + f(x_max);
    for (std::size_t i = 1; i < intervals; ++i) {
      sum += (i % 2 == 1 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
    }
    const double integral = 2.0 * sum * h / 3.0;
    if (level >= 4 && std::abs(integral - prev) < cfg.rel_tol * std::abs(integral)) {
      return integral * std::sqrt(2.0 * std::numbers::pi / beta) / (2.0 * std::numbers::pi);
    }
    prev = integral;
  }
  throw ConvergenceError("phase-space quadrature did not converge within max_levels");
}

}  // namespace qrefrig::oracle
