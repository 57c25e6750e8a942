#include "qrefrig/first_order.hpp"

#include <cmath>

#include "qrefrig/errors.hpp"

namespace qrefrig {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }
double csch(double x) { return 1.0 / std::sinh(x); }
double sech(double x) { return 1.0 / std::cosh(x); }
double sq(double x) { return x * x; }
double pow4(double x) { return sq(sq(x)); }
double cube(double x) { return x * x * x; }
double log_csch(double x) { return std::log(csch(x)); }

// The expressions below follow the reference coefficient table term by term,
// including its grouping; do not simplify them.

double otto_qc_oscillator(double w, double wp, double bh, double bc) {
  return 3.0 / (4.0 * sq(w) * sq(wp)) *
         (sq(w) * (bc * wp * coth(bc * wp / 2) - 1) * sq(csch(bc * wp / 2)) +
          sq(csch(w * bh / 2)) * (sq(w) - bh * cube(wp) * coth(w * bh / 2)));
}

double otto_qc_spin(double w, double wp, double bh, double bc) {
  return 3.0 / (4.0 * sq(w) * sq(wp)) *
         (sq(w) * (std::tanh(bc * wp / 2) + bc * wp * sq(sech(bc * wp / 2)) - std::tanh(w * bh / 2)) -
          bh * cube(wp) * sq(sech(w * bh / 2)));
}

double otto_qh_oscillator(double w, double wp, double bh, double bc) {
  return -3.0 / (4.0 * sq(w) * sq(wp)) *
         ((cube(w) * bc * coth(bc * wp / 2) - sq(wp)) * sq(csch(bc * wp / 2)) -
          sq(wp) * (w * bh * coth(w * bh / 2) - 1) * sq(csch(w * bh / 2)));
}

double otto_qh_spin(double w, double wp, double bh, double bc) {
  return -3.0 / (4.0 * sq(w) * sq(wp)) *
         (cube(w) * bc * sq(sech(bc * wp / 2)) -
          sq(wp) * (-std::tanh(bc * wp / 2) + std::tanh(w * bh / 2) + w * bh * sq(sech(w * bh / 2))));
}

double stirling_qab_oscillator(double w, double wp, double, double bc) {
  return 3.0 / 8.0 * bc *
         (std::sinh(w * bc) * pow4(csch(w * bc / 2)) / w -
          std::sinh(bc * wp) * pow4(csch(bc * wp / 2)) / wp);
}

double stirling_qab_spin(double w, double wp, double, double bc) {
  return 3.0 * bc / (2.0 * w * wp) * (wp / (std::cosh(w * bc) + 1) - w / (std::cosh(bc * wp) + 1));
}

double stirling_qbc_oscillator(double, double wp, double bh, double bc) {
  return 3.0 / (16.0 * sq(wp)) *
         (std::sinh(bh * wp) * (std::sinh(bh * wp) - 2 * bh * wp) * pow4(csch(bh * wp / 2)) -
          std::sinh(bc * wp) * (std::sinh(bc * wp) - 2 * bc * wp) * pow4(csch(bc * wp / 2)));
}

double stirling_qbc_spin(double, double wp, double bh, double bc) {
  return 3.0 * sq(sech(bc * wp / 2)) * sq(sech(bh * wp / 2)) / (8.0 * sq(wp)) *
         (bh * wp * std::cosh(bc * wp) + bh * wp + std::sinh(bh * wp) - bc * wp - std::sinh(bc * wp) -
          std::sinh(wp * (bc - bh)) - bc * wp * std::cosh(bh * wp));
}

double stirling_qcd_oscillator(double w, double wp, double bh, double) {
  return -3.0 / 8.0 * bh *
         (std::sinh(w * bh) * pow4(csch(w * bh / 2)) / w -
          std::sinh(bh * wp) * pow4(csch(bh * wp / 2)) / wp);
}

double stirling_qcd_spin(double w, double wp, double bh, double) {
  return -3.0 * bh / (2.0 * w * wp) * (wp / (std::cosh(w * bh) + 1) - w / (std::cosh(bh * wp) + 1));
}

double stirling_qda_oscillator(double w, double, double bh, double bc) {
  return -3.0 / (16.0 * sq(w)) *
         (std::sinh(w * bh) * (std::sinh(w * bh) - 2 * w * bh) * pow4(csch(w * bh / 2)) -
          std::sinh(w * bc) * (std::sinh(w * bc) - 2 * w * bc) * pow4(csch(w * bc / 2)));
}

double stirling_qda_spin(double w, double, double bh, double bc) {
  return -3.0 * sq(sech(w * bc / 2)) * sq(sech(w * bh / 2)) / (8.0 * sq(w)) *
         (std::sinh(w * bc) + std::sinh(w * (bc - bh)) + w * bc * (std::cosh(w * bh) + 1) -
          w * bh * (std::cosh(w * bc) + 1) - std::sinh(w * bh));
}

double stirling_cop_oscillator(double w, double wp, double bh, double bc) {
  const double den = bc * std::log(csch(bh * wp / 2) / csch(w * bh / 2)) +
                     bh * std::log(csch(w * bc / 2) / csch(bc * wp / 2));
  const double l_cwp = log_csch(bc * wp / 2);
  const double l_cw = log_csch(w * bc / 2);
  const double l_hwp = log_csch(bh * wp / 2);
  const double l_hw = log_csch(w * bh / 2);
  const double inner =
      (-w * bc * bh * sq(wp) * cube(coth(w * bc / 2)) +
       bh * sq(wp) * sq(coth(w * bc / 2)) * (2 * l_cwp - 2 * l_cw + bc * wp * coth(bh * wp / 2)) -
       bh * sq(wp) * sq(coth(w * bh / 2)) * (2 * l_cwp - 2 * l_cw + bc * wp * coth(bh * wp / 2)) -
       w * (-w * bc * bh * wp * cube(coth(bh * wp / 2)) +
            2 * w * bc * sq(coth(bh * wp / 2)) * (l_hw - l_hwp) +
            w * bc * sq(coth(bc * wp / 2)) * (bh * wp * coth(bh * wp / 2) + 2 * l_hwp - 2 * l_hw) +
            wp * (bc * l_hwp - bh * l_cwp - bc * l_hw + bh * l_cw) *
                (w * bh * std::sinh(bh * wp) * pow4(csch(bh * wp / 2)) -
                 bc * wp * std::sinh(w * bc) * pow4(csch(w * bc / 2)))) +
       w * bc * bh * coth(w * bc / 2) *
           (sq(w) * (sq(coth(bc * wp / 2)) - sq(coth(bh * wp / 2))) + sq(wp) * sq(coth(w * bh / 2))));
  return 3.0 * bc * bh / (8.0 * sq(w) * sq(wp) * sq(den)) * inner;
}

double stirling_cop_spin(double w, double wp, double bh, double bc) {
  const double den = bc * std::log(std::cosh(bh * wp / 2) / std::cosh(w * bh / 2)) +
                     bh * std::log(std::cosh(w * bc / 2) / std::cosh(bc * wp / 2));
  const double first =
      3.0 * bc * sq(bh) / (4.0 * sq(w) * sq(wp) * sq(den)) *
      (sq(wp) * (std::tanh(w * bc / 2) - std::tanh(w * bh / 2)) +
       sq(w) * (std::tanh(bh * wp / 2) - std::tanh(bc * wp / 2))) *
      (2 * std::log(std::cosh(w * bc / 2) / std::cosh(bc * wp / 2)) - w * bc * std::tanh(w * bc / 2) +
       bc * wp * std::tanh(bh * wp / 2));
  const double second =
      3.0 * bc * bh *
      (-2 * w * std::tanh(bc * wp / 2) - bc * sq(wp) * sq(sech(w * bc / 2)) +
       w * (bh * wp + std::sinh(bh * wp)) * sq(sech(bh * wp / 2))) /
      (4.0 * w * sq(wp) * den);
  return first - second;
}

}  // namespace

std::string_view to_string(LambdaCoefficient c) {
  switch (c) {
    case LambdaCoefficient::OttoQcOscillator: return "otto.q_c.oscillator";
    case LambdaCoefficient::OttoQcSpin: return "otto.q_c.spin";
    case LambdaCoefficient::OttoQhOscillator: return "otto.q_h.oscillator";
    case LambdaCoefficient::OttoQhSpin: return "otto.q_h.spin";
    case LambdaCoefficient::StirlingQabOscillator: return "stirling.q_ab.oscillator";
    case LambdaCoefficient::StirlingQabSpin: return "stirling.q_ab.spin";
    case LambdaCoefficient::StirlingQbcOscillator: return "stirling.q_bc.oscillator";
    case LambdaCoefficient::StirlingQbcSpin: return "stirling.q_bc.spin";
    case LambdaCoefficient::StirlingQcdOscillator: return "stirling.q_cd.oscillator";
    case LambdaCoefficient::StirlingQcdSpin: return "stirling.q_cd.spin";
    case LambdaCoefficient::StirlingQdaOscillator: return "stirling.q_da.oscillator";
    case LambdaCoefficient::StirlingQdaSpin: return "stirling.q_da.spin";
    case LambdaCoefficient::StirlingCopOscillator: return "stirling.cop.oscillator";
    case LambdaCoefficient::StirlingCopSpin: return "stirling.cop.spin";
  }
  return "unknown";
}

QuantumFamily family_of(LambdaCoefficient c) {
  switch (c) {
    case LambdaCoefficient::OttoQcSpin:
    case LambdaCoefficient::OttoQhSpin:
    case LambdaCoefficient::StirlingQabSpin:
    case LambdaCoefficient::StirlingQbcSpin:
    case LambdaCoefficient::StirlingQcdSpin:
    case LambdaCoefficient::StirlingQdaSpin:
    case LambdaCoefficient::StirlingCopSpin:
      return QuantumFamily::Spin;
    default:
      return QuantumFamily::Oscillator;
  }
}

double lambda_coefficient(LambdaCoefficient c, const OperatingPoint& op) {
  const double w = op.omega, wp = op.omega_prime, bh = op.beta_h, bc = op.beta_c;
  switch (c) {
    case LambdaCoefficient::OttoQcOscillator: return otto_qc_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::OttoQcSpin: return otto_qc_spin(w, wp, bh, bc);
    case LambdaCoefficient::OttoQhOscillator: return otto_qh_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::OttoQhSpin: return otto_qh_spin(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQabOscillator: return stirling_qab_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQabSpin: return stirling_qab_spin(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQbcOscillator: return stirling_qbc_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQbcSpin: return stirling_qbc_spin(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQcdOscillator: return stirling_qcd_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQcdSpin: return stirling_qcd_spin(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQdaOscillator: return stirling_qda_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::StirlingQdaSpin: return stirling_qda_spin(w, wp, bh, bc);
    case LambdaCoefficient::StirlingCopOscillator: return stirling_cop_oscillator(w, wp, bh, bc);
    case LambdaCoefficient::StirlingCopSpin: return stirling_cop_spin(w, wp, bh, bc);
  }
  return 0.0;
}

OttoHeatsO1 otto_heats_o1(QuantumFamily family, const OperatingPoint& op) {
  const double w = op.omega, wp = op.omega_prime, bh = op.beta_h, bc = op.beta_c;
  OttoHeatsO1 h;
  if (family == QuantumFamily::Oscillator) {
    const double d = coth(bh * w / 2) - coth(bc * wp / 2);
    h.q_c = {wp / 2 * d, lambda_coefficient(LambdaCoefficient::OttoQcOscillator, op)};
    h.q_h = {-w / 2 * d, lambda_coefficient(LambdaCoefficient::OttoQhOscillator, op)};
  } else {
    const double d = std::tanh(bc * wp / 2) - std::tanh(bh * w / 2);
    h.q_c = {wp / 2 * d, lambda_coefficient(LambdaCoefficient::OttoQcSpin, op)};
    h.q_h = {-w / 2 * d, lambda_coefficient(LambdaCoefficient::OttoQhSpin, op)};
  }
  return h;
}

StirlingHeatsO1 stirling_heats_o1(QuantumFamily family, const OperatingPoint& op) {
  const double w = op.omega, wp = op.omega_prime, bh = op.beta_h, bc = op.beta_c;
  StirlingHeatsO1 h;
  if (family == QuantumFamily::Oscillator) {
    h.q_ab = {wp / 2 * coth(bc * wp / 2) - w / 2 * coth(bc * w / 2) +
                  1 / bc * std::log(std::sinh(bc * w / 2) / std::sinh(bc * wp / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQabOscillator, op)};
    h.q_bc = {wp / 2 * (coth(bh * wp / 2) - coth(bc * wp / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQbcOscillator, op)};
    h.q_cd = {-wp / 2 * coth(bh * wp / 2) + w / 2 * coth(bh * w / 2) -
                  1 / bh * std::log(std::sinh(bh * w / 2) / std::sinh(bh * wp / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQcdOscillator, op)};
    h.q_da = {-w / 2 * (coth(bh * w / 2) - coth(bc * w / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQdaOscillator, op)};
  } else {
    h.q_ab = {w / 2 * std::tanh(bc * w / 2) - wp / 2 * std::tanh(bc * wp / 2) +
                  1 / bc * std::log(std::cosh(bc * wp / 2) / std::cosh(bc * w / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQabSpin, op)};
    h.q_bc = {wp / 2 * (std::tanh(bc * wp / 2) - std::tanh(bh * wp / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQbcSpin, op)};
    h.q_cd = {-w / 2 * std::tanh(bh * w / 2) + wp / 2 * std::tanh(bh * wp / 2) -
                  1 / bh * std::log(std::cosh(bh * wp / 2) / std::cosh(bh * w / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQcdSpin, op)};
    h.q_da = {-w / 2 * (std::tanh(bc * w / 2) - std::tanh(bh * w / 2)),
              lambda_coefficient(LambdaCoefficient::StirlingQdaSpin, op)};
  }
  return h;
}

Linear otto_cop_o1(QuantumFamily family, const OperatingPoint& op) {
  const double w = op.omega, wp = op.omega_prime;
  if (w == wp) throw ValidationError("Otto COP requires omega != omega_prime");
  double slope = 3.0 / (2.0 * sq(w) * sq(wp)) * (cube(w) - cube(wp)) / sq(w - wp);
  if (family == QuantumFamily::Oscillator) {
    slope *= coth(op.beta_h * w / 2) + coth(op.beta_c * wp / 2);
  }
  return {wp / (w - wp), slope};
}

Linear stirling_cop_o1(QuantumFamily family, const OperatingPoint& op) {
  const double w = op.omega, wp = op.omega_prime, bh = op.beta_h, bc = op.beta_c;
  if (w == wp) throw ValidationError("Stirling COP requires omega != omega_prime");
  double num = 0.0, den = 0.0;
  if (family == QuantumFamily::Oscillator) {
    num = wp * coth(bh * wp / 2) - w * coth(bc * w / 2) +
          1 / bc * std::log(sq(std::sinh(bc * w / 2)) / sq(std::sinh(bc * wp / 2)));
    den = 1 / bh * std::log(sq(std::sinh(bh * w / 2)) / sq(std::sinh(bh * wp / 2))) +
          1 / bc * std::log(sq(std::sinh(bc * wp / 2)) / sq(std::sinh(bc * w / 2)));
  } else {
    num = w * std::tanh(bc * w / 2) - wp * std::tanh(bh * wp / 2) +
          1 / bc * std::log(sq(std::cosh(bc * wp / 2)) / sq(std::cosh(bc * w / 2)));
    den = 1 / bh * std::log(sq(std::cosh(bh * wp / 2)) / sq(std::cosh(bh * w / 2))) +
          1 / bc * std::log(sq(std::cosh(bc * w / 2)) / sq(std::cosh(bc * wp / 2)));
  }
  if (den == 0.0) throw ValidationError("Stirling COP denominator vanishes");
  const auto coeff = family == QuantumFamily::Oscillator ? LambdaCoefficient::StirlingCopOscillator
                                                         : LambdaCoefficient::StirlingCopSpin;
  return {num / den, lambda_coefficient(coeff, op)};
}

Linear linearized_cop(const Linear& absorbed, const Linear& work) {
  // cop = a / (-W); d cop / d lambda = a' / (-W0) + a W' / W0^2.
  const double w0 = work.lead;
  return {absorbed.lead / -w0, absorbed.slope / -w0 + absorbed.lead * work.slope / (w0 * w0)};
}

}  // namespace qrefrig
