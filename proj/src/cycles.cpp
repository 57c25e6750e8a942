#include "qrefrig/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "qrefrig/errors.hpp"
#include "qrefrig/thermo.hpp"

namespace qrefrig {

namespace {

template <typename E>
struct EnumName {
  E value;
  std::string_view name;
};

constexpr EnumName<Backend> kBackendNames[] = {
    {Backend::ClosedFormO1, "closed-form-o1"},
    {Backend::Numeric, "numeric"},
};
constexpr EnumName<SpectrumSource> kSpectrumNames[] = {
    {SpectrumSource::FirstOrder, "first-order"},
    {SpectrumSource::Exact, "exact"},
};
constexpr EnumName<CycleType> kCycleNames[] = {
    {CycleType::Otto, "otto"},
    {CycleType::Stirling, "stirling"},
    {CycleType::ClassicalOtto, "classical-otto"},
};

template <typename E, std::size_t N>
std::string_view name_of(const EnumName<E> (&table)[N], E value) {
  for (const auto& e : table) {
    if (e.value == value) return e.name;
  }
  return "unknown";
}

template <typename E, std::size_t N>
E parse_name(const EnumName<E> (&table)[N], std::string_view name, const char* what) {
  for (const auto& e : table) {
    if (e.name == name) return e.value;
  }
  throw ValidationError(std::string("unknown ") + what + " '" + std::string(name) + "'");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ValidationError(std::string(what) + " must be positive");
  }
}

// First-order validity factor for the oscillator; throws outside the domain.
double checked_validity(double beta, double omega, double lambda) {
  const double c = 1.0 / std::tanh(0.5 * beta * omega);
  const double v = 0.75 * beta * lambda / (omega * omega) * c * c;
  if (v >= 1.0) {
    std::ostringstream msg;
    msg << "first-order partition function invalid at beta = " << beta << ", omega = " << omega
        << ": validity factor v = " << v << " >= 1";
    throw ValidityDomainError(msg.str());
  }
  return v;
}

LedgerFlags quantum_flags(const CycleParams& cp,
                          std::initializer_list<std::pair<double, double>> states) {
  LedgerFlags f;
  f.g_boundary = cp.hot().at_g_boundary();
  if (is_oscillator(cp.kind)) {
    double vmax = 0.0;
    for (const auto& [beta, omega] : states) vmax = std::max(vmax, checked_validity(beta, omega, cp.lambda));
    f.validity_warning = vmax > kValidityWarning;
  }
  return f;
}

// Numeric backends.

Spectrum first_order_spectrum(QuantumFamily family, double omega, double lambda,
                              std::size_t count) {
  Spectrum s;
  if (family == QuantumFamily::Spin) {
    const auto lv = detail::spin_levels(omega, lambda);
    s.levels = {lv.ground, lv.excited};
    s.complete = true;
  } else {
    s.levels.reserve(count);
    for (std::size_t n = 0; n < count; ++n) s.levels.push_back(detail::ao_level(n, omega, lambda));
  }
  s.truncation = s.levels.size();
  s.converged.assign(s.truncation, true);
  return s;
}

// Number of first-order oscillator levels a Gibbs sum at beta needs.
std::size_t first_order_count(double omega, double lambda, double beta) {
  const double e0 = detail::ao_level(0, omega, lambda);
  double sum = 1.0;
  for (std::size_t n = 1; n < (std::size_t{1} << 20); ++n) {
    const double w = std::exp(-beta * (detail::ao_level(n, omega, lambda) - e0));
    sum += w;
    if (w < kGibbsTailBound * sum) return n + 1;
  }
  throw TruncationError("Gibbs tail bound unreachable within the level cap");
}

Spectrum exact_spectrum(double omega, double lambda, std::size_t count, const NumericOptions& opts) {
  Spectrum s = oracle::ao_exact_spectrum({omega, lambda, 1.0}, opts.basis, count);
  s.levels.resize(count);
  s.converged.resize(count);
  s.truncation = count;
  return s;
}

// Spectrum for a single thermal state (Stirling corners).
Spectrum state_spectrum(const CycleParams& cp, double omega, double beta, const NumericOptions& opts) {
  if (cp.family() == QuantumFamily::Spin) return first_order_spectrum(QuantumFamily::Spin, omega, cp.lambda, 2);
  if (opts.spectrum == SpectrumSource::Exact) {
    return oracle::ao_exact_thermal_spectrum({omega, cp.lambda, 1.0}, beta, opts.basis);
  }
  return first_order_spectrum(QuantumFamily::Oscillator, omega, cp.lambda,
                              first_order_count(omega, cp.lambda, beta));
}

struct GibbsState {
  double u;
  double s;
};

GibbsState gibbs_state(const Spectrum& spec, double beta) {
  const auto p = gibbs_populations(spec, beta);
  double u = 0.0;
  for (std::size_t n = 0; n < spec.size(); ++n) u += p[n] * spec.levels[n];
  return {u, std::log(gibbs_partition(spec, beta)) + beta * u};
}

double energy(const Spectrum& spec, const std::vector<double>& pops) {
  double e = 0.0;
  for (std::size_t n = 0; n < spec.size(); ++n) e += spec.levels[n] * pops[n];
  return e;
}

std::optional<double> refrigerator_cop(double absorbed, double w) {
  if (w < 0.0) return absorbed / std::abs(w);
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Backend b) { return name_of(kBackendNames, b); }
std::string_view to_string(SpectrumSource s) { return name_of(kSpectrumNames, s); }
std::string_view to_string(CycleType c) { return name_of(kCycleNames, c); }
Backend parse_backend(std::string_view name) { return parse_name(kBackendNames, name, "backend"); }
SpectrumSource parse_spectrum_source(std::string_view name) {
  return parse_name(kSpectrumNames, name, "spectrum source");
}
CycleType parse_cycle_type(std::string_view name) { return parse_name(kCycleNames, name, "cycle"); }

QuantumFamily CycleParams::family() const {
  return is_spin(kind) ? QuantumFamily::Spin : QuantumFamily::Oscillator;
}

CycleParams CycleParams::with(MediumKind k, double lam) const {
  CycleParams c = *this;
  c.kind = k;
  c.lambda = lam;
  return c;
}

void CycleParams::validate() const {
  require_positive(omega, "omega");
  require_positive(omega_prime, "omega_prime");
  require_positive(beta_h, "beta_h");
  require_positive(beta_c, "beta_c");
  if (is_classical(kind)) {
    throw ValidationError("quantum cycles need a quantum medium; use the classical Otto cycle");
  }
  hot().validate(kind);
  cold().validate(kind);
}

bool CycleParams::otto_negative_work_condition() const {
  return omega > omega_prime && beta_c * omega_prime > beta_h * omega;
}

bool CycleParams::stirling_negative_work_condition() const {
  return omega > omega_prime && beta_h < beta_c;
}

double CycleLedger::heat(std::string_view name) const {
  for (const auto& h : heats) {
    if (h.name == name) return h.value;
  }
  throw std::out_of_range("ledger has no stroke heat '" + std::string(name) + "'");
}

double CycleLedger::work_from_heats() const {
  if (cycle == CycleType::ClassicalOtto) return heat("q_h") - heat("q_c");
  double w_sum = 0.0;
  for (const auto& h : heats) w_sum += h.value;
  return w_sum;
}

namespace detail {

NumericOtto otto_numeric(const CycleParams& cp, const NumericOptions& opts) {
  const auto family = cp.family();
  Spectrum hot, cold;
  if (family == QuantumFamily::Spin) {
    hot = first_order_spectrum(family, cp.omega, cp.lambda, 2);
    cold = first_order_spectrum(family, cp.omega_prime, cp.lambda, 2);
  } else if (opts.spectrum == SpectrumSource::Exact) {
    const auto h = oracle::ao_exact_thermal_spectrum(cp.hot(), cp.beta_h, opts.basis);
    const auto c = oracle::ao_exact_thermal_spectrum(cp.cold(), cp.beta_c, opts.basis);
    const std::size_t n = std::max(h.size(), c.size());
    hot = exact_spectrum(cp.omega, cp.lambda, n, opts);
    cold = exact_spectrum(cp.omega_prime, cp.lambda, n, opts);
  } else {
    const std::size_t n = std::max(first_order_count(cp.omega, cp.lambda, cp.beta_h),
                                   first_order_count(cp.omega_prime, cp.lambda, cp.beta_c));
    hot = first_order_spectrum(family, cp.omega, cp.lambda, n);
    cold = first_order_spectrum(family, cp.omega_prime, cp.lambda, n);
  }

  // Corner populations: A and D carry P^c, B and C carry P^h; the adiabats
  // B->C and D->A transport a population vector onto the other spectrum.
  const auto p_h = gibbs_populations(hot, cp.beta_h);
  const auto p_c = gibbs_populations(cold, cp.beta_c);
  const std::vector<double>& at_a = p_c;
  const std::vector<double>& at_b = p_h;
  const std::vector<double> at_c = at_b;
  const std::vector<double> at_d = p_c;

  NumericOtto r{};
  r.q_c = energy(cold, at_b) - energy(cold, at_a);
  r.q_h = energy(hot, at_d) - energy(hot, at_c);
  r.entropy_change = std::max(std::abs(shannon_entropy(at_c) - shannon_entropy(at_b)),
                              std::abs(shannon_entropy(at_a) - shannon_entropy(at_d)));
  return r;
}

NumericStirling stirling_numeric(const CycleParams& cp, const NumericOptions& opts) {
  const auto a = gibbs_state(state_spectrum(cp, cp.omega, cp.beta_c, opts), cp.beta_c);
  const auto b = gibbs_state(state_spectrum(cp, cp.omega_prime, cp.beta_c, opts), cp.beta_c);
  const auto c = gibbs_state(state_spectrum(cp, cp.omega_prime, cp.beta_h, opts), cp.beta_h);
  const auto d = gibbs_state(state_spectrum(cp, cp.omega, cp.beta_h, opts), cp.beta_h);
  return {(b.s - a.s) / cp.beta_c, c.u - b.u, (d.s - c.s) / cp.beta_h, a.u - d.u};
}

}  // namespace detail

CycleLedger otto_ledger(const CycleParams& cp, Backend backend, const NumericOptions& opts) {
  cp.validate();
  CycleLedger led;
  led.cycle = CycleType::Otto;
  led.backend = backend;
  led.kind = cp.kind;
  led.flags = quantum_flags(cp, {{cp.beta_h, cp.omega}, {cp.beta_c, cp.omega_prime}});
  led.flags.negative_work_condition = cp.otto_negative_work_condition();

  if (backend == Backend::ClosedFormO1) {
    const auto heats = otto_heats_o1(cp.family(), cp.point());
    const double q_c = heats.q_c.at(cp.lambda);
    const double q_h = heats.q_h.at(cp.lambda);
    led.heats = {{"q_c", q_c}, {"q_h", q_h}};
    led.w = q_c + q_h;
    const Linear work{heats.q_c.lead + heats.q_h.lead, heats.q_c.slope + heats.q_h.slope};
    if (led.w < 0.0 && work.lead < 0.0) led.cop = linearized_cop(heats.q_c, work).at(cp.lambda);
    return led;
  }

  const auto r = detail::otto_numeric(cp, opts);
  led.heats = {{"q_c", r.q_c}, {"q_h", r.q_h}};
  led.w = r.q_c + r.q_h;
  led.cop = refrigerator_cop(r.q_c, led.w);
  led.adiabat_entropy_change = r.entropy_change;
  return led;
}

double otto_cop_first_order(const CycleParams& cp) {
  cp.validate();
  return otto_cop_o1(cp.family(), cp.point()).at(cp.lambda);
}

double otto_slope_ratio(const CycleParams& cp) {
  cp.validate();
  return 1.0 / std::tanh(cp.beta_h * cp.omega / 2) + 1.0 / std::tanh(cp.beta_c * cp.omega_prime / 2);
}

CycleLedger stirling_ledger(const CycleParams& cp, Backend backend, const NumericOptions& opts) {
  cp.validate();
  CycleLedger led;
  led.cycle = CycleType::Stirling;
  led.backend = backend;
  led.kind = cp.kind;
  led.flags = quantum_flags(cp, {{cp.beta_c, cp.omega},
                                 {cp.beta_c, cp.omega_prime},
                                 {cp.beta_h, cp.omega_prime},
                                 {cp.beta_h, cp.omega}});
  led.flags.negative_work_condition = cp.stirling_negative_work_condition();

  if (backend == Backend::ClosedFormO1) {
    const auto h = stirling_heats_o1(cp.family(), cp.point());
    const double lam = cp.lambda;
    led.heats = {{"q_ab", h.q_ab.at(lam)}, {"q_bc", h.q_bc.at(lam)}, {"q_cd", h.q_cd.at(lam)},
                 {"q_da", h.q_da.at(lam)}};
    led.w = led.work_from_heats();
    const Linear absorbed{h.q_ab.lead + h.q_bc.lead, h.q_ab.slope + h.q_bc.slope};
    const Linear work{h.q_ab.lead + h.q_bc.lead + h.q_cd.lead + h.q_da.lead,
                      h.q_ab.slope + h.q_bc.slope + h.q_cd.slope + h.q_da.slope};
    if (led.w < 0.0 && work.lead < 0.0) led.cop = linearized_cop(absorbed, work).at(lam);
    return led;
  }

  const auto r = detail::stirling_numeric(cp, opts);
  led.heats = {{"q_ab", r.q_ab}, {"q_bc", r.q_bc}, {"q_cd", r.q_cd}, {"q_da", r.q_da}};
  led.w = led.work_from_heats();
  led.cop = refrigerator_cop(r.q_ab + r.q_bc, led.w);
  return led;
}

double stirling_cop_first_order(const CycleParams& cp) {
  cp.validate();
  return stirling_cop_o1(cp.family(), cp.point()).at(cp.lambda);
}

// Classical endoreversible Otto cycle.

void ClassicalOttoParams::validate() const {
  require_positive(beta1, "beta1");
  require_positive(beta2, "beta2");
  require_positive(beta3, "beta3");
  require_positive(beta4, "beta4");
  require_positive(omega, "omega");
  require_positive(omega_prime, "omega_prime");
  MediumParams{omega, lambda, omega0}.validate();
  // Equalities are admitted as degenerate strokes with no temperature change.
  if (!(beta1 >= beta4)) throw ValidationError("classical Otto cycle requires beta1 > beta4");
  if (!(beta3 <= beta2)) throw ValidationError("classical Otto cycle requires beta3 < beta2");
  if (beta_c && !(*beta_c >= beta1)) throw ValidationError("classical Otto cycle requires beta_c >= beta1");
  if (beta_h && !(*beta_h <= beta3)) throw ValidationError("classical Otto cycle requires beta_h <= beta3");
}

CycleLedger classical_otto_ledger(const ClassicalOttoParams& p) {
  p.validate();
  const MediumParams hot{p.omega, p.lambda, p.omega0};
  const MediumParams cold{p.omega_prime, p.lambda, p.omega0};
  double vmax = 0.0;
  for (const auto& [beta, m] : {std::pair{p.beta1, cold}, {p.beta4, cold}, {p.beta2, hot}, {p.beta3, hot}}) {
    const double v = classical_validity_factor(beta, m);
    if (v >= 1.0) throw ValidityDomainError("classical first-order expansion invalid: 3 lambda/(beta w^4) >= 1");
    vmax = std::max(vmax, v);
  }
  const double e1 = classical_entropy_energy(p.beta1, cold).energy;
  const double e2 = classical_entropy_energy(p.beta2, hot).energy;
  const double e3 = classical_entropy_energy(p.beta3, hot).energy;
  const double e4 = classical_entropy_energy(p.beta4, cold).energy;

  CycleLedger led;
  led.cycle = CycleType::ClassicalOtto;
  led.kind = p.lambda == 0.0 ? MediumKind::ClassicalHarmonic : MediumKind::ClassicalAnharmonic;
  const double q_c = e4 - e1;
  const double q_h = e3 - e2;
  led.heats = {{"q_c", q_c}, {"q_h", q_h}};
  led.works = {{"w_comp", e3 - e4}, {"w_exp", e2 - e1}};
  led.w = led.work_from_heats();
  // Work input with heat drawn from the cold side is refrigerator operation.
  led.flags.negative_work_condition = led.w > 0.0 && q_c > 0.0;
  led.flags.validity_warning = vmax > kValidityWarning;
  led.flags.g_boundary = hot.at_g_boundary();
  if (led.w > 0.0) led.cop = q_c / std::abs(led.w);
  return led;
}

Linear classical_otto_cop_o1(const ClassicalOttoParams& p) {
  p.validate();
  const double b1 = p.beta1, b2 = p.beta2, b3 = p.beta3, b4 = p.beta4;
  const double w = p.omega, wp = p.omega_prime;
  if (w == wp) throw ValidationError("classical Otto COP requires omega != omega_prime");
  const double combo = b1 * b2 * b3 - b2 * b3 * b4 + b3 * b4 * b1 - b4 * b1 * b2;
  if (combo == 0.0) throw ValidationError("classical Otto COP: inverse-temperature combination vanishes");
  const double w4 = w * w * w * w;
  const double wp4 = wp * wp * wp * wp;
  const double bracket = 1 / (b2 * w4) + 1 / (b3 * w4) - 1 / (b4 * wp4) - 1 / (b1 * wp4);
  const double slope = 3.0 / (b1 * b2 * b3 * b4) * (b1 - b4) * (b2 - b3) / (combo * combo) * bracket;
  return {wp / (w - wp), slope};
}

double classical_otto_cop_closed(const ClassicalOttoParams& p) { return classical_otto_cop_o1(p).at(p.lambda); }

double classical_adiabat_solve(double beta_start, double from_freq, double to_freq, double lambda) {
  require_positive(beta_start, "beta_start");
  require_positive(from_freq, "from frequency");
  require_positive(to_freq, "to frequency");
  if (!(lambda >= 0.0)) throw ValidationError("lambda must be non-negative");

  auto entropy = [lambda](double beta, double w) {
    return 1.0 - std::log(beta * w) - 6.0 * lambda / (beta * w * w * w * w);
  };
  const double target = entropy(beta_start, from_freq);
  const double to4 = to_freq * to_freq * to_freq * to_freq;
  // The entropy is decreasing in beta only above its maximum at 6 lambda / w^4.
  const double branch_floor = 6.0 * lambda / to4;
  auto residual = [&](double beta) { return entropy(beta, to_freq) - target; };

  double beta = beta_start * from_freq / to_freq;
  if (beta <= branch_floor) beta = 2.0 * branch_floor;
  double f = residual(beta);
  for (int it = 0; it < 100; ++it) {
    if (std::abs(f) < 1e-12) return beta;
    const double df = -1.0 / beta + 6.0 * lambda / (beta * beta * to4);
    if (!(df < 0.0)) break;
    double step = -f / df;
    double next = beta + step;
    while (next <= branch_floor) {
      step *= 0.5;
      next = beta + step;
    }
    double f_next = residual(next);
    for (int halving = 0; halving < 60 && std::abs(f_next) > std::abs(f); ++halving) {
      step *= 0.5;
      next = beta + step;
      f_next = residual(next);
    }
    beta = next;
    f = f_next;
  }
  if (std::abs(f) < 1e-12) return beta;
  throw ConvergenceError("classical adiabat solve did not converge; parameters likely leave the validity domain");
}

}  // namespace qrefrig
