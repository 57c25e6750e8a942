#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qrefrig {

enum class MediumKind {
  QuantumHarmonic,
  QuantumAnharmonic,
  SpinHarmonic,
  SpinAnharmonic,
  ClassicalHarmonic,
  ClassicalAnharmonic,
};

std::string_view to_string(MediumKind kind);
/// Accepts the kebab-case names produced by to_string ("quantum-anharmonic").
MediumKind parse_medium_kind(std::string_view name);

constexpr bool is_harmonic(MediumKind k) {
  return k == MediumKind::QuantumHarmonic || k == MediumKind::SpinHarmonic ||
         k == MediumKind::ClassicalHarmonic;
}
constexpr bool is_spin(MediumKind k) {
  return k == MediumKind::SpinHarmonic || k == MediumKind::SpinAnharmonic;
}
constexpr bool is_classical(MediumKind k) {
  return k == MediumKind::ClassicalHarmonic || k == MediumKind::ClassicalAnharmonic;
}
constexpr bool is_quantum(MediumKind k) { return !is_classical(k); }
constexpr bool is_oscillator(MediumKind k) {
  return k == MediumKind::QuantumHarmonic || k == MediumKind::QuantumAnharmonic;
}

/// Frequency and quartic strength of one working-medium instance, in units
/// hbar = k_B = m = 1. `omega0` only sets the scale of the dimensionless
/// anharmonicity g = lambda / omega0^3.
struct MediumParams {
  double omega = 1.0;
  double lambda = 0.0;
  double omega0 = 1.0;

  double anharmonicity() const { return lambda / (omega0 * omega0 * omega0); }

  /// Throws ValidationError unless omega > 0, omega0 > 0, lambda >= 0 and
  /// g <= 1.
  void validate() const;
  /// Same checks plus: harmonic kinds require lambda == 0.
  void validate(MediumKind kind) const;

  /// True at the closed end g == 1, which is accepted but flagged.
  bool at_g_boundary() const;

  static MediumParams from_anharmonicity(double omega, double g, double omega0);
};

/// Ascending energy levels. `complete` marks spectra with no omitted tail
/// (two-level systems), for which no Gibbs tail bound is needed.
struct Spectrum {
  std::vector<double> levels;
  std::size_t truncation = 0;
  std::vector<bool> converged;
  bool complete = false;

  std::size_t size() const { return levels.size(); }
  bool empty() const { return levels.empty(); }
};

struct SpinLevels {
  double ground;
  double excited;
};

struct SpinCalibration {
  double b_z;
  double gamma;
  double omega_drive;
};

/// First-order quartic-oscillator level:
/// (n + 1/2) w + (3 lambda / 2 w^2)(n^2 + n + 1/2).
double ao_level(std::size_t n, const MediumParams& p);

/// The lowest `count` levels of ao_level.
Spectrum ao_spectrum_first_order(const MediumParams& p, std::size_t count);

SpinLevels spin_levels(const MediumParams& p);
Spectrum spin_spectrum(const MediumParams& p);

/// gamma and Omega of the spin Hamiltonian gamma B_z S_z + Omega 1. B_z is a
/// free positive scale and never enters the energies.
SpinCalibration spin_calibration(const MediumParams& p, double b_z = 1.0);

/// v = (3 beta lambda / 4 w^2) coth^2(beta w / 2). The first-order partition
/// function is proportional to (1 - v).
double ao_validity_factor(double beta, const MediumParams& p);

/// Soft-warning threshold on v; above it the O(lambda^2) terms can no longer
/// be assumed negligible.
inline constexpr double kValidityWarning = 0.5;
/// Relative slack on g = 1 so that lambda = g omega0^3 round-trips.
inline constexpr double kGBoundaryTolerance = 1e-12;

double ao_partition_first_order(double beta, const MediumParams& p);
double spin_partition(double beta, const MediumParams& p);

/// 3 lambda / (beta w^4): the relative first-order correction of the
/// classical partition function.
double classical_validity_factor(double beta, const MediumParams& p);

/// (1 / beta w)(1 - 3 lambda / (beta w^4)).
double classical_partition(double beta, const MediumParams& p);

struct ClassicalState {
  double entropy;
  double energy;
};

/// S = 1 - ln(beta w) - 6 lambda/(beta w^4), E = 1/beta - 3 lambda/(beta^2 w^4).
ClassicalState classical_entropy_energy(double beta, const MediumParams& p);

namespace detail {
// Unchecked kernels: no parameter validation, lambda may be negative. Used by
// the lambda-derivative probes and by the validated wrappers above.
double ao_level(std::size_t n, double omega, double lambda);
SpinLevels spin_levels(double omega, double lambda);
}  // namespace detail

}  // namespace qrefrig
