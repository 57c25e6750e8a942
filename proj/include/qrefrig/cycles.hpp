#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrefrig/first_order.hpp"
#include "qrefrig/media.hpp"
#include "qrefrig/oracle.hpp"

namespace qrefrig {

enum class Backend { ClosedFormO1, Numeric };
enum class SpectrumSource { FirstOrder, Exact };
enum class CycleType { Otto, Stirling, ClassicalOtto };

std::string_view to_string(Backend b);
std::string_view to_string(SpectrumSource s);
std::string_view to_string(CycleType c);
Backend parse_backend(std::string_view name);
SpectrumSource parse_spectrum_source(std::string_view name);
CycleType parse_cycle_type(std::string_view name);

/// Settings of the Numeric backend. FirstOrder uses the first-order level
/// formula; Exact substitutes the diagonalized quartic spectrum (oscillator
/// media only; spin spectra are exact either way).
struct NumericOptions {
  SpectrumSource spectrum = SpectrumSource::FirstOrder;
  oracle::BasisConfig basis{};
};

/// A quantum four-stroke cycle between frequencies omega (hot side) and
/// omega_prime (cold side). Refrigerator-mode violations are flagged on the
/// ledger, not rejected.
struct CycleParams {
  double omega = 5.0;
  double omega_prime = 4.0;
  double beta_h = 0.5;
  double beta_c = 1.0;
  MediumKind kind = MediumKind::QuantumAnharmonic;
  double lambda = 0.0;
  double omega0 = 1.0;

  MediumParams hot() const { return {omega, lambda, omega0}; }
  MediumParams cold() const { return {omega_prime, lambda, omega0}; }
  OperatingPoint point() const { return {omega, omega_prime, beta_h, beta_c}; }
  QuantumFamily family() const;
  CycleParams with(MediumKind k, double lam) const;

  /// Throws ValidationError for non-positive frequencies or temperatures,
  /// classical kinds, or invalid medium parameters.
  void validate() const;

  /// omega > omega' and beta_c omega' > beta_h omega.
  bool otto_negative_work_condition() const;
  /// omega > omega' and beta_h < beta_c.
  bool stirling_negative_work_condition() const;
};

struct StrokeHeat {
  std::string name;
  double value;
};

struct LedgerFlags {
  bool negative_work_condition = false;
  bool partition_valid = true;
  bool validity_warning = false;  // first-order validity factor above kValidityWarning
  bool truncation_converged = true;
  bool g_boundary = false;
};

struct CycleLedger {
  CycleType cycle = CycleType::Otto;
  std::optional<Backend> backend;
  MediumKind kind = MediumKind::QuantumAnharmonic;
  std::vector<StrokeHeat> heats;
  /// Adiabatic-stroke work for the classical cycle (w_comp, w_exp).
  std::vector<StrokeHeat> works;
  double w = 0.0;
  std::optional<double> cop;
  LedgerFlags flags;
  /// Numeric Otto only: largest change of the population Shannon entropy
  /// across the two adiabatic strokes.
  std::optional<double> adiabat_entropy_change;

  double heat(std::string_view name) const;
  /// Net work recomputed from the stroke heats in the ledger's own sign
  /// convention: sum of heats for quantum cycles, q_h - q_c for classical.
  double work_from_heats() const;
};

/// Otto ledger. Heats keep the reference sign convention:
/// q_c = sum_n E'_n (P^h_n - P^c_n), q_h = sum_n E_n (P^c_n - P^h_n) and
/// w = q_c + q_h; cop = q_c / |w| when w < 0. The ClosedFormO1 cop is the
/// O(lambda) truncation of that ratio built from the first-order heats.
CycleLedger otto_ledger(const CycleParams& cp, Backend backend, const NumericOptions& opts = {});

/// The first-order Otto COP lead + slope * lambda for the cycle's medium.
double otto_cop_first_order(const CycleParams& cp);

/// coth(beta_h w/2) + coth(beta_c w'/2): ratio of the oscillator and spin
/// first-order Otto COP slopes.
double otto_slope_ratio(const CycleParams& cp);

/// Stirling ledger: q_ab = T_c (S_B - S_A), q_bc = U_C - U_B,
/// q_cd = T_h (S_D - S_C), q_da = U_A - U_D, w = their sum, and
/// cop = (q_ab + q_bc) / |w| when w < 0.
CycleLedger stirling_ledger(const CycleParams& cp, Backend backend,
                            const NumericOptions& opts = {});

double stirling_cop_first_order(const CycleParams& cp);

/// Classical endoreversible Otto cycle with four endpoint inverse
/// temperatures: beta_1 -> beta_4 on the cold isochore (frequency w'),
/// beta_3 -> beta_2 on the hot isochore (frequency w).
struct ClassicalOttoParams {
  double beta1 = 1.0;
  double beta2 = 0.6;
  double beta3 = 0.5;
  double beta4 = 0.8;
  double omega = 5.0;
  double omega_prime = 4.0;
  double lambda = 0.0;
  double omega0 = 1.0;
  std::optional<double> beta_h;
  std::optional<double> beta_c;

  /// beta_c >= beta_1 > beta_4 and beta_h <= beta_3 < beta_2, all positive;
  /// beta_1 == beta_4 or beta_3 == beta_2 pass as degenerate strokes.
  void validate() const;
};

/// Heats q_c = E(b4, w') - E(b1, w') and q_h = E(b3, w) - E(b2, w) (rejected
/// heat counted positive), works w_comp = E(b3, w) - E(b4, w') and
/// w_exp = E(b2, w) - E(b1, w'), w = q_h - q_c, cop = q_c / |w| when w > 0.
CycleLedger classical_otto_ledger(const ClassicalOttoParams& p);

/// Closed-form first-order COP of the classical cycle, lead + slope * lambda.
Linear classical_otto_cop_o1(const ClassicalOttoParams& p);
double classical_otto_cop_closed(const ClassicalOttoParams& p);

/// Inverse temperature at frequency `to_freq` with the same classical
/// entropy as (beta_start, from_freq). Safeguarded Newton from the harmonic
/// seed beta_start * from_freq / to_freq; ConvergenceError after 100 steps.
double classical_adiabat_solve(double beta_start, double from_freq, double to_freq, double lambda);

namespace detail {
// Numeric-backend heats without parameter validation; lambda may be
// negative so that central differences in lambda can straddle zero.
struct NumericOtto {
  double q_c;
  double q_h;
  double entropy_change;
};
struct NumericStirling {
  double q_ab;
  double q_bc;
  double q_cd;
  double q_da;
};
NumericOtto otto_numeric(const CycleParams& cp, const NumericOptions& opts);
NumericStirling stirling_numeric(const CycleParams& cp, const NumericOptions& opts);
}  // namespace detail

}  // namespace qrefrig
