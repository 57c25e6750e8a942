#include "qrefrig/order_check.hpp"

#include <cmath>
#include <utility>

#include "qrefrig/errors.hpp"
#include "qrefrig/media.hpp"
#include "qrefrig/thermo.hpp"

namespace qrefrig::oracle {

namespace {

std::string_view family_suffix(QuantumFamily f) {
  return f == QuantumFamily::Spin ? "spin" : "oscillator";
}

MediumKind anharmonic_kind(QuantumFamily f) {
  return f == QuantumFamily::Spin ? MediumKind::SpinAnharmonic : MediumKind::QuantumAnharmonic;
}

double numeric_stirling_cop(const detail::NumericStirling& s) {
  return (s.q_ab + s.q_bc) / std::abs(s.q_ab + s.q_bc + s.q_cd + s.q_da);
}

}  // namespace

OrderReport halving_test(std::string quantity, double lambda,
                         const std::function<double(double)>& err) {
  OrderReport r;
  r.quantity = std::move(quantity);
  r.lambda = lambda;
  if (lambda == 0.0) {
    r.pass = true;
    return r;
  }
  r.err = err(lambda);
  r.err_half = err(lambda / 2);
  if (r.err == 0.0 && r.err_half == 0.0) {
    r.pass = true;
    return r;
  }
  if (r.err_half != 0.0) r.ratio = r.err / r.err_half;
  r.pass = r.ratio && *r.ratio >= kOrderRatioMin && *r.ratio <= kOrderRatioMax;
  return r;
}

OrderReport ao_level_order(std::size_t n, double omega, double lambda, const BasisConfig& cfg) {
  return halving_test("ao.level." + std::to_string(n), lambda, [&](double lam) {
    const MediumParams p{omega, lam, 1.0};
    const auto exact = ao_exact_spectrum(p, cfg, n + 1);
    return std::abs(ao_level(n, p) - exact.levels[n]);
  });
}

OrderReport ao_partition_order(double beta, double omega, double lambda, const BasisConfig& cfg) {
  return halving_test("ao.partition", lambda, [&](double lam) {
    const MediumParams p{omega, lam, 1.0};
    const double exact = gibbs_sum_exact(ao_exact_thermal_spectrum(p, beta, cfg), beta);
    return std::abs(ao_partition_first_order(beta, p) - exact);
  });
}

OrderReport classical_partition_order(double beta, double omega, double lambda,
                                      const QuadratureConfig& cfg) {
  return halving_test("classical.partition", lambda, [&](double lam) {
    const MediumParams p{omega, lam, 1.0};
    return std::abs(classical_partition(beta, p) - classical_partition_quadrature(beta, p, cfg));
  });
}

std::vector<OrderReport> cycle_order_checks(const CycleParams& cp, double lambda,
                                            const NumericOptions& opts) {
  const auto family = cp.family();
  const auto kind = anharmonic_kind(family);
  const std::string suffix(family_suffix(family));

  struct Probe {
    const char* stem;
    std::function<double(const CycleParams&)> closed;
    std::function<double(const CycleParams&)> numeric;
  };
  auto otto_heat = [&opts](const char* name, Backend b) {
    return [name, b, &opts](const CycleParams& c) { return otto_ledger(c, b, opts).heat(name); };
  };
  auto stirling_heat = [&opts](const char* name, Backend b) {
    return [name, b, &opts](const CycleParams& c) { return stirling_ledger(c, b, opts).heat(name); };
  };
  const std::vector<Probe> probes = {
      {"otto.q_c", otto_heat("q_c", Backend::ClosedFormO1), otto_heat("q_c", Backend::Numeric)},
      {"otto.q_h", otto_heat("q_h", Backend::ClosedFormO1), otto_heat("q_h", Backend::Numeric)},
      {"otto.cop", [](const CycleParams& c) { return otto_cop_first_order(c); },
       [&opts](const CycleParams& c) { return otto_ledger(c, Backend::Numeric, opts).cop.value(); }},
      {"stirling.q_ab", stirling_heat("q_ab", Backend::ClosedFormO1), stirling_heat("q_ab", Backend::Numeric)},
      {"stirling.q_bc", stirling_heat("q_bc", Backend::ClosedFormO1), stirling_heat("q_bc", Backend::Numeric)},
      {"stirling.q_cd", stirling_heat("q_cd", Backend::ClosedFormO1), stirling_heat("q_cd", Backend::Numeric)},
      {"stirling.q_da", stirling_heat("q_da", Backend::ClosedFormO1), stirling_heat("q_da", Backend::Numeric)},
      {"stirling.cop", [](const CycleParams& c) { return stirling_cop_first_order(c); },
       [&opts](const CycleParams& c) { return stirling_ledger(c, Backend::Numeric, opts).cop.value(); }},
  };

  std::vector<OrderReport> out;
  out.reserve(probes.size());
  for (const auto& probe : probes) {
    out.push_back(halving_test(std::string(probe.stem) + "." + suffix, lambda, [&](double lam) {
      const auto c = cp.with(kind, lam);
      return std::abs(probe.closed(c) - probe.numeric(c));
    }));
  }
  return out;
}

std::vector<OrderReport> full_order_suite(const CycleParams& cp, double spectral_lambda,
                                          double cycle_lambda, const NumericOptions& opts) {
  std::vector<OrderReport> out;
  for (std::size_t n = 0; n < 4; ++n) out.push_back(ao_level_order(n, 1.0, spectral_lambda, opts.basis));
  out.push_back(ao_partition_order(1.0, 5.0, spectral_lambda, opts.basis));
  out.push_back(classical_partition_order(1.0, 1.0, spectral_lambda));
  for (auto family : {QuantumFamily::Oscillator, QuantumFamily::Spin}) {
    auto cycle = cycle_order_checks(cp.with(anharmonic_kind(family), 0.0), cycle_lambda, opts);
    out.insert(out.end(), cycle.begin(), cycle.end());
  }
  return out;
}

double rederive_coefficient(LambdaCoefficient c, const OperatingPoint& op, double h) {
  CycleParams cp;
  cp.omega = op.omega;
  cp.omega_prime = op.omega_prime;
  cp.beta_h = op.beta_h;
  cp.beta_c = op.beta_c;
  cp.kind = anharmonic_kind(family_of(c));
  const NumericOptions opts{};

  auto quantity = [&](double lam) {
    const auto at = cp.with(cp.kind, lam);
    using LC = LambdaCoefficient;
    switch (c) {
      case LC::OttoQcOscillator:
      case LC::OttoQcSpin:
        return detail::otto_numeric(at, opts).q_c;
      case LC::OttoQhOscillator:
      case LC::OttoQhSpin:
        return detail::otto_numeric(at, opts).q_h;
      case LC::StirlingQabOscillator:
      case LC::StirlingQabSpin:
        return detail::stirling_numeric(at, opts).q_ab;
      case LC::StirlingQbcOscillator:
      case LC::StirlingQbcSpin:
        return detail::stirling_numeric(at, opts).q_bc;
      case LC::StirlingQcdOscillator:
      case LC::StirlingQcdSpin:
        return detail::stirling_numeric(at, opts).q_cd;
      case LC::StirlingQdaOscillator:
      case LC::StirlingQdaSpin:
        return detail::stirling_numeric(at, opts).q_da;
      case LC::StirlingCopOscillator:
      case LC::StirlingCopSpin:
        return numeric_stirling_cop(detail::stirling_numeric(at, opts));
    }
    throw std::logic_error("unhandled lambda coefficient");
  };
  return (quantity(h) - quantity(-h)) / (2 * h);
}

std::vector<CoefficientCheck> coefficient_checks(const OperatingPoint& op, double h) {
  std::vector<CoefficientCheck> out;
  for (auto c : kAllLambdaCoefficients) {
    CoefficientCheck chk{c, lambda_coefficient(c, op), rederive_coefficient(c, op, h)};
    chk.pass = std::abs(chk.printed - chk.rederived) <= kCoefficientTolerance;
    out.push_back(chk);
  }
  return out;
}

ClassicalSlopeCheck classical_slope_check(ClassicalOttoParams p, double h) {
  auto cop_at = [&](double lam) {
    auto q = p;
    q.lambda = lam;
    q.beta4 = classical_adiabat_solve(q.beta3, q.omega, q.omega_prime, lam);
    q.beta2 = classical_adiabat_solve(q.beta1, q.omega_prime, q.omega, lam);
    return classical_otto_ledger(q).cop.value();
  };
  auto at_zero = p;
  at_zero.lambda = 0.0;
  at_zero.beta4 = at_zero.beta3 * p.omega / p.omega_prime;
  at_zero.beta2 = at_zero.beta1 * p.omega_prime / p.omega;
  // Forward difference: the classical expansion needs lambda >= 0.
  const double ledger = (-3 * cop_at(0.0) + 4 * cop_at(h) - cop_at(2 * h)) / (2 * h);
  return {classical_otto_cop_o1(at_zero).slope, ledger};
}

}  // namespace qrefrig::oracle
