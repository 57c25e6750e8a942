#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrefrig/cycles.hpp"
#include "qrefrig/first_order.hpp"
#include "qrefrig/oracle.hpp"

namespace qrefrig::oracle {

inline constexpr double kOrderRatioMin = 3.2;
inline constexpr double kOrderRatioMax = 4.8;

/// Halving test of a first-order formula against its oracle:
/// ratio = err(lambda) / err(lambda / 2), expected near 4 for an O(lambda^2)
/// residual.
struct OrderReport {
  std::string quantity;
  double lambda = 0.0;
  double err = 0.0;
  double err_half = 0.0;
  std::optional<double> ratio;  // undefined when err_half == 0
  bool pass = false;
};

/// Runs the halving test for err(lambda) = |closed(lambda) - oracle(lambda)|.
/// Both errors zero passes by convention.
OrderReport halving_test(std::string quantity, double lambda,
                         const std::function<double(double)>& err);

OrderReport ao_level_order(std::size_t n, double omega, double lambda, const BasisConfig& cfg = {});
OrderReport ao_partition_order(double beta, double omega, double lambda, const BasisConfig& cfg = {});
OrderReport classical_partition_order(double beta, double omega, double lambda,
                                      const QuadratureConfig& cfg = {});

/// Otto and Stirling stroke heats and the reference first-order COPs of the
/// cycle's medium family, closed form against the Numeric backend.
std::vector<OrderReport> cycle_order_checks(const CycleParams& cp, double lambda,
                                            const NumericOptions& opts);

/// Everything at once: AO levels 0..3 (omega = 1), Z_ao (beta = 1,
/// omega = 5), classical Z (beta = 1, omega = 1) at `spectral_lambda`, then
/// cycle quantities for both families at `cycle_lambda`.
std::vector<OrderReport> full_order_suite(const CycleParams& cp, double spectral_lambda = 0.02,
                                          double cycle_lambda = 0.2,
                                          const NumericOptions& opts = {SpectrumSource::Exact, {}});

inline constexpr double kCoefficientTolerance = 1e-6;

struct CoefficientCheck {
  LambdaCoefficient coefficient;
  double printed = 0.0;
  double rederived = 0.0;
  bool pass = false;  // |printed - rederived| <= kCoefficientTolerance
};

/// d/dlambda at 0 of the Numeric-backend quantity (first-order spectrum),
/// by central difference with step `h`.
double rederive_coefficient(LambdaCoefficient c, const OperatingPoint& op, double h = 1e-6);

std::vector<CoefficientCheck> coefficient_checks(const OperatingPoint& op, double h = 1e-6);

/// Classical cycle with beta_2 and beta_4 placed on the adiabats through
/// beta_1 and beta_3: returns {closed-form slope, ledger central-difference
/// slope}. Informational only.
struct ClassicalSlopeCheck {
  double closed_form;
  double ledger;
};
ClassicalSlopeCheck classical_slope_check(ClassicalOttoParams p, double h = 1e-6);

}  // namespace qrefrig::oracle
