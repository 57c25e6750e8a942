#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qrefrig/media.hpp"

namespace qrefrig {

/// A Gibbs sum stops once the last included weight drops below this fraction
/// of the running sum.
inline constexpr double kGibbsTailBound = 1e-16;

/// How thermal functions of a medium are evaluated.
///  - ClosedForm: the analytic first-order expressions (AO internal energy is
///    the O(lambda) truncation of -d ln Z / d beta).
///  - GibbsSum: explicit Boltzmann sums over the medium's level list. For
///    classical media this is identical to ClosedForm.
enum class ThermoBackend { ClosedForm, GibbsSum };

struct ThermalFunctions {
  double beta = 0.0;
  double z = 0.0;
  double u = 0.0;
  double s = 0.0;
  std::optional<std::vector<double>> populations;
};

struct EnergyCost {
  double delta_h = 0.0;
  MediumKind kind = MediumKind::QuantumAnharmonic;
  double beta = 0.0;
  MediumParams params;
};

struct ConsistencyReport {
  double u_closed = 0.0;
  double u_fd = 0.0;
  double residual = 0.0;
};

/// Normalized Boltzmann populations. Incomplete spectra must reach the tail
/// bound within the levels given, otherwise TruncationError.
std::vector<double> gibbs_populations(const Spectrum& spec, double beta);

/// Enough first-order levels of a quantum medium that a Gibbs sum at `beta`
/// reaches the tail bound. Spin media return their complete two-level
/// spectrum.
Spectrum thermal_spectrum(MediumKind kind, const MediumParams& p, double beta);

/// Partition sum over a spectrum, evaluated with the ground level factored out
/// for range safety.
double gibbs_partition(const Spectrum& spec, double beta);

ThermalFunctions thermal_functions(MediumKind kind, const MediumParams& p, double beta,
                                   ThermoBackend backend = ThermoBackend::ClosedForm);

/// ln Z consistent with the closed-form internal energy of `kind`; the
/// finite-difference check differentiates this.
double log_partition(MediumKind kind, const MediumParams& p, double beta);

/// Gibbs-averaged level shift due to the quartic term for the oscillator,
/// truncated at O(lambda): the partition function in the denominator is taken
/// at lambda = 0, which makes delta_h exactly linear in lambda.
EnergyCost energy_cost_ao(double beta, const MediumParams& p);
EnergyCost energy_cost_spin(double beta, const MediumParams& p);

/// Direct sum_n p_n (E_n - (n+1/2) w) over the first-order spectrum with
/// lambda-dependent populations. Agrees with energy_cost_ao to O(lambda^2).
double energy_cost_ao_gibbs_sum(double beta, const MediumParams& p);

/// Compares the closed-form U with a Richardson-refined central difference
/// of -ln Z, step h = max(1e-5, 1e-5 beta).
ConsistencyReport finite_difference_consistency(MediumKind kind, const MediumParams& p,
                                                double beta);

double shannon_entropy(std::span<const double> populations);

}  // namespace qrefrig
