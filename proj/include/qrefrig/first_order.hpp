#pragma once

#include <array>
#include <string_view>

namespace qrefrig {

/// Operating point shared by the Otto and Stirling closed forms: hot-side
/// frequency w, cold-side frequency w', and the two bath inverse temperatures.
struct OperatingPoint {
  double omega;
  double omega_prime;
  double beta_h;
  double beta_c;
};

/// lead + slope * lambda.
struct Linear {
  double lead = 0.0;
  double slope = 0.0;

  double at(double lambda) const { return lead + slope * lambda; }
};

/// Working media the closed forms exist for.
enum class QuantumFamily { Oscillator, Spin };

/// Coefficients of lambda in the first-order heats and Stirling COP, one per
/// (quantity, family), transcribed verbatim from the reference table.
enum class LambdaCoefficient {
  OttoQcOscillator,
  OttoQcSpin,
  OttoQhOscillator,
  OttoQhSpin,
  StirlingQabOscillator,
  StirlingQabSpin,
  StirlingQbcOscillator,
  StirlingQbcSpin,
  StirlingQcdOscillator,
  StirlingQcdSpin,
  StirlingQdaOscillator,
  StirlingQdaSpin,
  StirlingCopOscillator,
  StirlingCopSpin,
};

inline constexpr std::array kAllLambdaCoefficients = {
    LambdaCoefficient::OttoQcOscillator,      LambdaCoefficient::OttoQcSpin,
    LambdaCoefficient::OttoQhOscillator,      LambdaCoefficient::OttoQhSpin,
    LambdaCoefficient::StirlingQabOscillator, LambdaCoefficient::StirlingQabSpin,
    LambdaCoefficient::StirlingQbcOscillator, LambdaCoefficient::StirlingQbcSpin,
    LambdaCoefficient::StirlingQcdOscillator, LambdaCoefficient::StirlingQcdSpin,
    LambdaCoefficient::StirlingQdaOscillator, LambdaCoefficient::StirlingQdaSpin,
    LambdaCoefficient::StirlingCopOscillator, LambdaCoefficient::StirlingCopSpin,
};

std::string_view to_string(LambdaCoefficient c);
QuantumFamily family_of(LambdaCoefficient c);

double lambda_coefficient(LambdaCoefficient c, const OperatingPoint& op);

struct OttoHeatsO1 {
  Linear q_c;
  Linear q_h;
};

struct StirlingHeatsO1 {
  Linear q_ab;
  Linear q_bc;
  Linear q_cd;
  Linear q_da;
};

OttoHeatsO1 otto_heats_o1(QuantumFamily family, const OperatingPoint& op);
StirlingHeatsO1 stirling_heats_o1(QuantumFamily family, const OperatingPoint& op);

/// Otto COP to O(lambda): w'/(w-w') + lambda (3/(2 w^2 w'^2)) (w^3-w'^3)/(w-w')^2
/// times (coth(beta_h w/2) + coth(beta_c w'/2)) for the oscillator, times 1
/// for the spin. Throws ValidationError at w == w'.
Linear otto_cop_o1(QuantumFamily family, const OperatingPoint& op);

/// Stirling COP to O(lambda): the harmonic ratio of log-sinh (oscillator) or
/// log-cosh (spin) terms plus the tabulated lambda-coefficient.
Linear stirling_cop_o1(QuantumFamily family, const OperatingPoint& op);

/// O(lambda) truncation of absorbed / |absorbed + rejected| given the
/// first-order heats; the lead requires a negative zeroth-order work.
Linear linearized_cop(const Linear& absorbed, const Linear& work);

}  // namespace qrefrig
