#include "qrefrig/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qrefrig/errors.hpp"

namespace qrefrig {

namespace {

constexpr std::size_t kMaxThermalLevels = std::size_t{1} << 20;

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError("inverse temperature beta must be positive and finite");
  }
}

// Weights exp(-beta (E_n - E_0)) and their sum; throws when the tail bound is
// unmet on an incomplete spectrum.
double shifted_weights(const Spectrum& spec, double beta, std::vector<double>& weights) {
  if (spec.empty()) throw ValidationError("spectrum is empty");
  require_beta(beta);
  const double e0 = spec.levels.front();
  weights.resize(spec.size());
  double sum = 0.0;
  for (std::size_t n = 0; n < spec.size(); ++n) {
    weights[n] = std::exp(-beta * (spec.levels[n] - e0));
    sum += weights[n];
  }
  if (!spec.complete && !(weights.back() < kGibbsTailBound * sum)) {
    std::ostringstream msg;
    msg << "Gibbs tail bound not reached within " << spec.size() << " levels at beta = " << beta
        << " (last weight / sum = " << weights.back() / sum << ")";
    throw TruncationError(msg.str());
  }
  return sum;
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

std::vector<double> gibbs_populations(const Spectrum& spec, double beta) {
  std::vector<double> w;
  const double sum = shifted_weights(spec, beta, w);
  for (auto& x : w) x /= sum;
  return w;
}

double gibbs_partition(const Spectrum& spec, double beta) {
  std::vector<double> w;
  const double sum = shifted_weights(spec, beta, w);
  return std::exp(-beta * spec.levels.front()) * sum;
}

Spectrum thermal_spectrum(MediumKind kind, const MediumParams& p, double beta) {
  require_beta(beta);
  p.validate(kind);
  if (is_spin(kind)) return spin_spectrum(p);
  if (!is_oscillator(kind)) throw ValidationError("classical media have no discrete spectrum");

  Spectrum s;
  const double e0 = detail::ao_level(0, p.omega, p.lambda);
  double sum = 0.0;
  for (std::size_t n = 0; n < kMaxThermalLevels; ++n) {
    const double e = detail::ao_level(n, p.omega, p.lambda);
    const double w = std::exp(-beta * (e - e0));
    s.levels.push_back(e);
    sum += w;
    if (n > 0 && w < kGibbsTailBound * sum) {
      s.truncation = s.levels.size();
      s.converged.assign(s.truncation, true);
      return s;
    }
  }
  throw TruncationError("Gibbs tail bound unreachable within the level cap");
}

double log_partition(MediumKind kind, const MediumParams& p, double beta) {
  require_beta(beta);
  p.validate(kind);
  switch (kind) {
    case MediumKind::QuantumHarmonic:
    case MediumKind::QuantumAnharmonic:
      return std::log(ao_partition_first_order(beta, p));
    case MediumKind::SpinHarmonic:
    case MediumKind::SpinAnharmonic:
      return std::log(spin_partition(beta, p));
    case MediumKind::ClassicalHarmonic:
    case MediumKind::ClassicalAnharmonic: {
      // First-order logarithm: the closed-form entropy and energy are its exact
      // derivatives.
      const double v = classical_validity_factor(beta, p);
      if (v >= 1.0) {
        throw ValidityDomainError("classical first-order expansion invalid: 3 lambda/(beta w^4) >= 1");
      }
      return -std::log(beta * p.omega) - v;
    }
  }
  return 0.0;
}

ThermalFunctions thermal_functions(MediumKind kind, const MediumParams& p, double beta,
                                   ThermoBackend backend) {
  require_beta(beta);
  p.validate(kind);
  ThermalFunctions tf;
  tf.beta = beta;

  if (is_classical(kind)) {
    tf.z = std::exp(log_partition(kind, p, beta));
    tf.u = classical_entropy_energy(beta, p).energy;
    tf.s = std::log(tf.z) + beta * tf.u;
    return tf;
  }

  const Spectrum spec = thermal_spectrum(kind, p, beta);
  auto pops = gibbs_populations(spec, beta);

  if (backend == ThermoBackend::GibbsSum || is_spin(kind)) {
    double u = 0.0;
    for (std::size_t n = 0; n < spec.size(); ++n) u += pops[n] * spec.levels[n];
    tf.z = gibbs_partition(spec, beta);
    tf.u = u;
    // For spin media the closed forms are the exact two-level sums, so both
    // backends coincide.
  } else {
    const double x = 0.5 * beta * p.omega;
    const double c = coth(x);
    const double csch = 1.0 / std::sinh(x);
    const double a = 0.75 * p.lambda / (p.omega * p.omega);
    tf.z = ao_partition_first_order(beta, p);
    tf.u = 0.5 * p.omega * c + a * (c * c - beta * p.omega * c * csch * csch);
  }
  tf.s = std::log(tf.z) + beta * tf.u;
  tf.populations = std::move(pops);
  return tf;
}

EnergyCost energy_cost_ao(double beta, const MediumParams& p) {
  // The cost is only meaningful where the first-order Z stays positive.
  (void)ao_partition_first_order(beta, p);
  const double x = 0.5 * beta * p.omega;
  const double csch = 1.0 / std::sinh(x);
  const double c = coth(x);
  const double z0 = 0.5 * csch;
  const double dh = 3.0 * p.lambda / (8.0 * p.omega * p.omega) * csch * c * c / z0;
  return {dh, MediumKind::QuantumAnharmonic, beta, p};
}

EnergyCost energy_cost_spin(double beta, const MediumParams& p) {
  require_beta(beta);
  p.validate();
  const double bw = beta * p.omega;
  // Z^sp at lambda = 0, factored as exp(-bw/2)(1 + exp(-bw)).
  const double z0 = std::exp(-0.5 * bw) * (1.0 + std::exp(-bw));
  const double dh = 0.75 * p.lambda / (p.omega * p.omega) * std::exp(-1.5 * bw) *
                    (5.0 + std::exp(bw)) / z0;
  return {dh, MediumKind::SpinAnharmonic, beta, p};
}

double energy_cost_ao_gibbs_sum(double beta, const MediumParams& p) {
  const Spectrum spec = thermal_spectrum(MediumKind::QuantumAnharmonic, p, beta);
  const auto pops = gibbs_populations(spec, beta);
  double dh = 0.0;
  for (std::size_t n = 0; n < spec.size(); ++n) {
    dh += pops[n] * (spec.levels[n] - (static_cast<double>(n) + 0.5) * p.omega);
  }
  return dh;
}

ConsistencyReport finite_difference_consistency(MediumKind kind, const MediumParams& p,
                                                double beta) {
  const double u_closed = thermal_functions(kind, p, beta).u;
  const double h = std::max(1e-5, 1e-5 * beta);
  auto central = [&](double step) {
    return -(log_partition(kind, p, beta + step) - log_partition(kind, p, beta - step)) /
           (2.0 * step);
  };
  const double d_h = central(h);
  const double d_half = central(0.5 * h);
  const double u_fd = (4.0 * d_half - d_h) / 3.0;
  return {u_closed, u_fd, std::abs(u_closed - u_fd)};
}

double shannon_entropy(std::span<const double> populations) {
  double s = 0.0;
  for (double q : populations) {
    if (q > 0.0) s -= q * std::log(q);
  }
  return s;
}

}  // namespace qrefrig
