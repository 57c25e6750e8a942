#include "qrefrig/media.hpp"

#include <cmath>
#include <sstream>

#include "qrefrig/errors.hpp"

namespace qrefrig {

namespace {

struct KindName {
  MediumKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {MediumKind::QuantumHarmonic, "quantum-harmonic"},
    {MediumKind::QuantumAnharmonic, "quantum-anharmonic"},
    {MediumKind::SpinHarmonic, "spin-harmonic"},
    {MediumKind::SpinAnharmonic, "spin-anharmonic"},
    {MediumKind::ClassicalHarmonic, "classical-harmonic"},
    {MediumKind::ClassicalAnharmonic, "classical-anharmonic"},
};

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    std::ostringstream msg;
    msg << "inverse temperature beta must be positive and finite (got " << beta << ")";
    throw ValidationError(msg.str());
  }
}

}  // namespace

std::string_view to_string(MediumKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

MediumKind parse_medium_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  throw ValidationError("unknown medium kind '" + std::string(name) + "'");
}

void MediumParams::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("medium frequency omega must be positive");
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw ValidationError("reference frequency omega0 must be positive");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("anharmonic strength lambda must be non-negative");
  }
  if (anharmonicity() > 1.0 + kGBoundaryTolerance) {
    std::ostringstream msg;
    msg << "anharmonicity g = lambda/omega0^3 must satisfy 0 <= g <= 1 (got " << anharmonicity()
        << ")";
    throw ValidationError(msg.str());
  }
}

void MediumParams::validate(MediumKind kind) const {
  validate();
  if (is_harmonic(kind) && lambda != 0.0) {
    throw ValidationError("harmonic medium '" + std::string(to_string(kind)) +
                          "' requires lambda = 0");
  }
}

bool MediumParams::at_g_boundary() const {
  return std::abs(anharmonicity() - 1.0) <= kGBoundaryTolerance;
}

MediumParams MediumParams::from_anharmonicity(double omega, double g, double omega0) {
  MediumParams p{omega, g * omega0 * omega0 * omega0, omega0};
  p.validate();
  return p;
}

namespace detail {

double ao_level(std::size_t n, double omega, double lambda) {
  const double k = static_cast<double>(n);
  return (k + 0.5) * omega + 1.5 * lambda / (omega * omega) * (k * k + k + 0.5);
}

SpinLevels spin_levels(double omega, double lambda) {
  const double shift = lambda / (omega * omega);
  return {0.5 * omega + 0.75 * shift, 1.5 * omega + 3.75 * shift};
}

}  // namespace detail

double ao_level(std::size_t n, const MediumParams& p) {
  p.validate();
  return detail::ao_level(n, p.omega, p.lambda);
}

Spectrum ao_spectrum_first_order(const MediumParams& p, std::size_t count) {
  p.validate();
  if (count == 0) throw ValidationError("spectrum must retain at least one level");
  Spectrum s;
  s.levels.reserve(count);
  for (std::size_t n = 0; n < count; ++n) s.levels.push_back(detail::ao_level(n, p.omega, p.lambda));
  s.truncation = count;
  s.converged.assign(count, true);
  return s;
}

SpinLevels spin_levels(const MediumParams& p) {
  p.validate();
  return detail::spin_levels(p.omega, p.lambda);
}

Spectrum spin_spectrum(const MediumParams& p) {
  const auto lv = spin_levels(p);
  Spectrum s;
  s.levels = {lv.ground, lv.excited};
  s.truncation = 2;
  s.converged = {true, true};
  s.complete = true;
  return s;
}

SpinCalibration spin_calibration(const MediumParams& p, double b_z) {
  p.validate();
  if (!(b_z > 0.0) || !std::isfinite(b_z)) {
    throw ValidationError("magnetic field B_z must be positive");
  }
  const double w2 = p.omega * p.omega;
  return {b_z, (p.omega + 3.0 * p.lambda / w2) / b_z, p.omega + 2.25 * p.lambda / w2};
}

double ao_validity_factor(double beta, const MediumParams& p) {
  require_beta(beta);
  p.validate();
  const double c = 1.0 / std::tanh(0.5 * beta * p.omega);
  return 0.75 * beta * p.lambda / (p.omega * p.omega) * c * c;
}

double ao_partition_first_order(double beta, const MediumParams& p) {
  const double v = ao_validity_factor(beta, p);
  if (v >= 1.0) {
    std::ostringstream msg;
    msg << "first-order partition function is non-positive: validity factor v = " << v
        << " >= 1 (beta = " << beta << ", omega = " << p.omega << ", lambda = " << p.lambda
        << ")";
    throw ValidityDomainError(msg.str());
  }
  return 0.5 / std::sinh(0.5 * beta * p.omega) * (1.0 - v);
}

double spin_partition(double beta, const MediumParams& p) {
  require_beta(beta);
  const auto lv = spin_levels(p);
  return std::exp(-beta * lv.ground) + std::exp(-beta * lv.excited);
}

double classical_validity_factor(double beta, const MediumParams& p) {
  require_beta(beta);
  p.validate();
  const double w2 = p.omega * p.omega;
  return 3.0 * p.lambda / (beta * w2 * w2);
}

double classical_partition(double beta, const MediumParams& p) {
  const double v = classical_validity_factor(beta, p);
  if (v >= 1.0) {
    std::ostringstream msg;
    msg << "first-order classical partition function is non-positive: 3 lambda/(beta w^4) = "
        << v << " >= 1";
    throw ValidityDomainError(msg.str());
  }
  return (1.0 - v) / (beta * p.omega);
}

ClassicalState classical_entropy_energy(double beta, const MediumParams& p) {
  const double v = classical_validity_factor(beta, p);
  return {1.0 - std::log(beta * p.omega) - 2.0 * v, (1.0 - v) / beta};
}

}  // namespace qrefrig
