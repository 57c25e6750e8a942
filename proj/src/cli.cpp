#include "qrefrig/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qrefrig/errors.hpp"
#include "qrefrig/order_check.hpp"
#include "qrefrig/thermo.hpp"

namespace qrefrig::cli {

using nlohmann::json;

namespace {

std::string normalize_key(std::string_view key) {
  std::string k(key);
  for (auto& ch : k) {
    if (ch == '-') ch = '_';
  }
  return k;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ValidationError("'" + std::string(key) + "' expects a number, got '" + std::string(value) + "'");
  }
  return x;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  std::size_t n = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, n);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                          std::string(value) + "'");
  }
  return n;
}

const std::vector<std::string> kQuantities = {"all",    "ao-levels", "ao-partition", "classical-partition",
                                              "cycles", "otto",      "stirling"};

std::string_view cost_case_name(CostCase c) { return c == CostCase::HotBath ? "i" : "ii"; }

// Rounded to 12 significant digits so JSON matches the CSV precision.
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x).c_str(), nullptr);
}

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json config_json(const RunConfig& cfg) {
  json out = json::object();
  for (const auto& [key, value] : describe(cfg)) {
    const auto* end = value.data() + value.size();
    long long n = 0;
    double x = 0.0;
    if (const auto r = std::from_chars(value.data(), end, n); r.ec == std::errc() && r.ptr == end) {
      out[key] = n;
    } else if (const auto d = std::from_chars(value.data(), end, x); d.ec == std::errc() && d.ptr == end) {
      out[key] = x;
    } else {
      out[key] = value;
    }
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string provenance(std::string_view command, const RunConfig& cfg) {
  std::string out = "# " + std::string(kToolVersion) + "\n# command=" + std::string(command) + "\n";
  for (const auto& [key, value] : describe(cfg)) out += "# " + key + "=" + value + "\n";
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  return line + "\n";
}

std::string csv_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string("nan");
}

json flags_json(const LedgerFlags& f) {
  return {{"g_boundary", f.g_boundary},
          {"negative_work_condition", f.negative_work_condition},
          {"partition_valid", f.partition_valid},
          {"truncation_converged", f.truncation_converged},
          {"validity_warning", f.validity_warning}};
}

json ledger_json(const CycleLedger& led) {
  json heats = json::object();
  for (const auto& h : led.heats) heats[h.name] = number(h.value);
  json j = {{"cycle", std::string(to_string(led.cycle))},
            {"medium", std::string(to_string(led.kind))},
            {"heats", heats},
            {"w", number(led.w)},
            {"cop", optional_number(led.cop)},
            {"flags", flags_json(led.flags)}};
  if (led.backend) j["backend"] = std::string(to_string(*led.backend));
  if (!led.works.empty()) {
    json works = json::object();
    for (const auto& w : led.works) works[w.name] = number(w.value);
    j["works"] = works;
  }
  if (led.adiabat_entropy_change) j["adiabat_entropy_change"] = number(*led.adiabat_entropy_change);
  return j;
}

std::string error_tag(const std::exception& e) {
  if (dynamic_cast<const ValidityDomainError*>(&e)) return "validity_domain_error";
  if (dynamic_cast<const TruncationError*>(&e)) return "truncation_error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence_error";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  return "numeric_error";
}

void require_refrigerator_frequencies(const RunConfig& cfg) {
  if (!(cfg.omega > cfg.omega_prime)) {
    throw ValidationError("quantum refrigerator cycles require omega > omega_prime (got omega = " +
                          format_number(cfg.omega) + ", omega_prime = " + format_number(cfg.omega_prime) +
                          ")");
  }
}

double energy_cost(MediumKind kind, const RunConfig& cfg, double lambda) {
  const bool hot = cfg.cost_case == CostCase::HotBath;
  const double beta = hot ? cfg.beta_h : cfg.beta_c;
  const MediumParams p{hot ? cfg.omega : cfg.omega_prime, lambda, cfg.omega0};
  return is_spin(kind) ? energy_cost_spin(beta, p).delta_h : energy_cost_ao(beta, p).delta_h;
}

CycleLedger quantum_ledger(const RunConfig& cfg, const CycleParams& cp) {
  return cfg.cycle == CycleType::Stirling ? stirling_ledger(cp, cfg.backend, cfg.numeric_options())
                                          : otto_ledger(cp, cfg.backend, cfg.numeric_options());
}

}  // namespace

RunConfig::RunConfig() : omega0(std::cbrt(0.6)) {}

double RunConfig::resolved_lambda() const {
  if (lambda) return *lambda;
  if (g) return *g * omega0 * omega0 * omega0;
  return 0.0;
}

std::vector<double> RunConfig::g_grid() const {
  std::vector<double> out(g_count);
  for (std::size_t i = 0; i < g_count; ++i) {
    out[i] = g_count == 1 ? g_start
                          : (i + 1 == g_count ? g_stop
                                              : g_start + (g_stop - g_start) * static_cast<double>(i) /
                                                              static_cast<double>(g_count - 1));
  }
  return out;
}

CycleParams RunConfig::cycle_params() const {
  return {omega, omega_prime, beta_h, beta_c, medium, resolved_lambda(), omega0};
}

ClassicalOttoParams RunConfig::classical_params() const {
  ClassicalOttoParams p;
  p.beta1 = beta1;
  p.beta2 = beta2;
  p.beta3 = beta3;
  p.beta4 = beta4;
  p.omega = omega;
  p.omega_prime = omega_prime;
  p.lambda = resolved_lambda();
  p.omega0 = omega0;
  p.beta_h = beta_h;
  p.beta_c = beta_c;
  return p;
}

NumericOptions RunConfig::numeric_options() const {
  NumericOptions opts;
  opts.spectrum = spectrum;
  opts.basis.size = basis_size;
  return opts;
}

void RunConfig::validate() const {
  const std::pair<const char*, double> positives[] = {
      {"omega", omega},   {"omega_prime", omega_prime}, {"beta_h", beta_h}, {"beta_c", beta_c},
      {"beta1", beta1},   {"beta2", beta2},             {"beta3", beta3},   {"beta4", beta4},
      {"omega0", omega0},
  };
  for (const auto& [name, x] : positives) {
    if (!(x > 0.0)) throw ValidationError(std::string(name) + " must be positive");
  }
  if (lambda && g) throw ValidationError("set either lambda or g, not both");
  if (lambda && !(*lambda >= 0.0)) throw ValidationError("lambda must be non-negative");
  if (g && !(*g >= 0.0 && *g <= 1.0)) throw ValidationError("g must lie in [0, 1]");
  if (g_count < 1) throw ValidationError("g_count must be at least 1");
  if (!(g_start <= g_stop)) throw ValidationError("g grid requires g_start <= g_stop");
  if (!(g_start >= 0.0 && g_stop <= 1.0)) throw ValidationError("g grid must lie in [0, 1]");
  if (basis_size < 8) throw ValidationError("basis_size must be at least 8");
  if (levels < 1) throw ValidationError("levels must be at least 1");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "cycle",   "medium",  "omega",    "omega_prime", "beta_h",  "beta_c",     "beta1",
      "beta2",   "beta3",   "beta4",    "omega0",      "lambda",  "g",          "g_start",
      "g_stop",  "g_count", "backend",  "spectrum",    "basis_size", "cost_case", "levels",
      "quantity", "format", "output",
  };
  return keys;
}

void set(RunConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string_view value = trim(raw_value);
  static const std::map<std::string, double RunConfig::*> doubles = {
      {"omega", &RunConfig::omega},   {"omega_prime", &RunConfig::omega_prime},
      {"beta_h", &RunConfig::beta_h}, {"beta_c", &RunConfig::beta_c},
      {"beta1", &RunConfig::beta1},   {"beta2", &RunConfig::beta2},
      {"beta3", &RunConfig::beta3},   {"beta4", &RunConfig::beta4},
      {"omega0", &RunConfig::omega0}, {"g_start", &RunConfig::g_start},
      {"g_stop", &RunConfig::g_stop},
  };
  static const std::map<std::string, std::size_t RunConfig::*> counts = {
      {"g_count", &RunConfig::g_count},
      {"basis_size", &RunConfig::basis_size},
      {"levels", &RunConfig::levels},
  };
  if (auto it = doubles.find(key); it != doubles.end()) {
    cfg.*(it->second) = parse_double(key, value);
  } else if (auto ct = counts.find(key); ct != counts.end()) {
    cfg.*(ct->second) = parse_count(key, value);
  } else if (key == "lambda") {
    cfg.lambda = parse_double(key, value);
  } else if (key == "g") {
    cfg.g = parse_double(key, value);
  } else if (key == "cycle") {
    cfg.cycle = parse_cycle_type(value);
  } else if (key == "medium") {
    cfg.medium = parse_medium_kind(value);
  } else if (key == "backend") {
    cfg.backend = parse_backend(value);
  } else if (key == "spectrum") {
    cfg.spectrum = parse_spectrum_source(value);
  } else if (key == "cost_case") {
    if (value == "i") {
      cfg.cost_case = CostCase::HotBath;
    } else if (value == "ii") {
      cfg.cost_case = CostCase::ColdBath;
    } else {
      throw ValidationError("cost_case must be 'i' or 'ii'");
    }
  } else if (key == "quantity") {
    if (std::find(kQuantities.begin(), kQuantities.end(), value) == kQuantities.end()) {
      throw ValidationError("unknown oracle quantity '" + std::string(value) + "'");
    }
    cfg.quantity = std::string(value);
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw ValidationError("format must be 'csv' or 'json'");
    cfg.format = std::string(value);
  } else if (key == "output") {
    cfg.output = std::string(value);
  } else {
    throw ValidationError("unknown configuration key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    set(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"cycle", std::string(to_string(cfg.cycle))},
      {"medium", std::string(to_string(cfg.medium))},
      {"omega", format_number(cfg.omega)},
      {"omega_prime", format_number(cfg.omega_prime)},
      {"beta_h", format_number(cfg.beta_h)},
      {"beta_c", format_number(cfg.beta_c)},
      {"beta1", format_number(cfg.beta1)},
      {"beta2", format_number(cfg.beta2)},
      {"beta3", format_number(cfg.beta3)},
      {"beta4", format_number(cfg.beta4)},
      {"omega0", format_number(cfg.omega0)},
  };
  if (cfg.lambda) out.emplace_back("lambda", format_number(*cfg.lambda));
  if (cfg.g) out.emplace_back("g", format_number(*cfg.g));
  out.insert(out.end(), {
                            {"g_start", format_number(cfg.g_start)},
                            {"g_stop", format_number(cfg.g_stop)},
                            {"g_count", std::to_string(cfg.g_count)},
                            {"backend", std::string(to_string(cfg.backend))},
                            {"spectrum", std::string(to_string(cfg.spectrum))},
                            {"basis_size", std::to_string(cfg.basis_size)},
                            {"cost_case", std::string(cost_case_name(cfg.cost_case))},
                            {"levels", std::to_string(cfg.levels)},
                            {"quantity", cfg.quantity},
                        });
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string run_cycle(const RunConfig& cfg) {
  cfg.validate();
  json out;
  if (cfg.cycle == CycleType::ClassicalOtto) {
    const auto p = cfg.classical_params();
    out = ledger_json(classical_otto_ledger(p));
    out["cop_closed_form"] = number(classical_otto_cop_closed(p));
  } else {
    require_refrigerator_frequencies(cfg);
    out = ledger_json(quantum_ledger(cfg, cfg.cycle_params()));
  }
  out["config"] = config_json(cfg);
  return dump(out);
}

std::string run_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.cycle == CycleType::ClassicalOtto) {
    throw ValidationError("sweep supports the otto and stirling cycles; use `figure figS2` for the classical cycle");
  }
  require_refrigerator_frequencies(cfg);

  std::string out = provenance("sweep", cfg);
  out += "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic,flags\n";
  const double w0_3 = cfg.omega0 * cfg.omega0 * cfg.omega0;
  const CycleParams base = cfg.cycle_params();

  for (double g : cfg.g_grid()) {
    const double lambda = g * w0_3;
    std::vector<std::string> flags;
    auto add_flag = [&flags](std::string f) {
      if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.push_back(std::move(f));
    };
    auto evaluate = [&](MediumKind kind, const char* tag, double lam, std::optional<double>* delta_h) {
      std::optional<double> cop;
      try {
        const auto led = quantum_ledger(cfg, base.with(kind, lam));
        if (delta_h) *delta_h = energy_cost(kind, cfg, lam);
        cop = led.cop;
        if (!led.flags.negative_work_condition) add_flag("no_negative_work_condition");
        if (led.flags.g_boundary) add_flag("g_boundary");
        if (led.flags.validity_warning) add_flag(std::string(tag) + ":validity_warning");
        if (!cop) add_flag(std::string(tag) + ":cop_undefined");
      } catch (const NumericError& e) {
        add_flag(std::string(tag) + ":" + error_tag(e));
      }
      return cop;
    };
    std::optional<double> dh_ao, dh_spin;
    const auto cop_ao = evaluate(MediumKind::QuantumAnharmonic, "ao", lambda, &dh_ao);
    const auto cop_spin = evaluate(MediumKind::SpinAnharmonic, "spin", lambda, &dh_spin);
    const auto cop_harm = evaluate(MediumKind::QuantumHarmonic, "harmonic", 0.0, nullptr);

    std::string flag_field;
    for (const auto& f : flags) flag_field += (flag_field.empty() ? "" : ";") + f;
    out += csv_row({format_number(g), format_number(lambda), csv_number(dh_ao), csv_number(cop_ao),
                    csv_number(dh_spin), csv_number(cop_spin), csv_number(cop_harm),
                    flag_field.empty() ? "ok" : flag_field});
  }
  return out;
}

std::string run_figure(std::string_view name, const RunConfig& user) {
  // Parameters are fixed to the figure captions; only the grid size and
  // output settings carry over.
  RunConfig cfg;
  cfg.g_count = user.g_count;
  cfg.output = user.output;
  if (name == "fig2a" || name == "fig2b") {
    cfg.cycle = CycleType::Otto;
  } else if (name == "fig3a" || name == "fig3b") {
    cfg.cycle = CycleType::Stirling;
  } else if (name == "figS2") {
    cfg.cycle = CycleType::ClassicalOtto;
  } else {
    throw ValidationError("unknown figure '" + std::string(name) +
                          "'; expected fig2a, fig2b, fig3a, fig3b or figS2");
  }
  cfg.cost_case = (name == "fig2b" || name == "fig3b") ? CostCase::ColdBath : CostCase::HotBath;
  cfg.validate();

  std::string out = provenance("figure " + std::string(name), cfg);
  const double w0_3 = cfg.omega0 * cfg.omega0 * cfg.omega0;
  const CycleParams base = cfg.cycle_params();

  if (cfg.cycle == CycleType::ClassicalOtto) {
    out += "g,cop_quantum_ao,cop_harmonic,cop_classical_ao\n";
    auto cp = cfg.classical_params();
    for (double g : cfg.g_grid()) {
      const double lambda = g * w0_3;
      cp.lambda = lambda;
      out += csv_row({format_number(g),
                      format_number(otto_cop_first_order(base.with(MediumKind::QuantumAnharmonic, lambda))),
                      format_number(otto_cop_first_order(base.with(MediumKind::QuantumHarmonic, 0.0))),
                      format_number(classical_otto_cop_closed(cp))});
    }
    return out;
  }

  const bool stirling = cfg.cycle == CycleType::Stirling;
  auto cop = [stirling](const CycleParams& cp) {
    return stirling ? stirling_cop_first_order(cp) : otto_cop_first_order(cp);
  };
  out += stirling ? "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic,cop_spin_harmonic\n"
                  : "g,lambda,deltaH_ao,cop_ao,deltaH_spin,cop_spin,cop_harmonic\n";
  for (double g : cfg.g_grid()) {
    const double lambda = g * w0_3;
    std::vector<std::string> row = {
        format_number(g),
        format_number(lambda),
        format_number(energy_cost(MediumKind::QuantumAnharmonic, cfg, lambda)),
        format_number(cop(base.with(MediumKind::QuantumAnharmonic, lambda))),
        format_number(energy_cost(MediumKind::SpinAnharmonic, cfg, lambda)),
        format_number(cop(base.with(MediumKind::SpinAnharmonic, lambda))),
        format_number(cop(base.with(MediumKind::QuantumHarmonic, 0.0))),
    };
    if (stirling) row.push_back(format_number(cop(base.with(MediumKind::SpinHarmonic, 0.0))));
    out += csv_row(row);
  }
  return out;
}

std::string run_oracle_compare(const RunConfig& cfg) {
  cfg.validate();
  NumericOptions opts;
  opts.spectrum = SpectrumSource::Exact;
  opts.basis.size = cfg.basis_size;
  const double spectral = cfg.lambda.value_or(0.02);
  const double cyclic = cfg.lambda.value_or(0.2);
  CycleParams cp = cfg.cycle_params();
  cp.lambda = 0.0;

  std::vector<oracle::OrderReport> reports;
  auto append = [&reports](std::vector<oracle::OrderReport> more) {
    reports.insert(reports.end(), more.begin(), more.end());
  };
  const std::string& q = cfg.quantity;
  if (q == "all") {
    append(oracle::full_order_suite(cp, spectral, cyclic, opts));
  } else if (q == "ao-levels") {
    for (std::size_t n = 0; n < 4; ++n) reports.push_back(oracle::ao_level_order(n, 1.0, spectral, opts.basis));
  } else if (q == "ao-partition") {
    reports.push_back(oracle::ao_partition_order(1.0, 5.0, spectral, opts.basis));
  } else if (q == "classical-partition") {
    reports.push_back(oracle::classical_partition_order(1.0, 1.0, spectral));
  } else {
    for (auto kind : {MediumKind::QuantumAnharmonic, MediumKind::SpinAnharmonic}) {
      for (auto& r : oracle::cycle_order_checks(cp.with(kind, 0.0), cyclic, opts)) {
        const bool keep = q == "cycles" || r.quantity.rfind(q + ".", 0) == 0;
        if (keep) reports.push_back(std::move(r));
      }
    }
  }

  json list = json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    list.push_back({{"quantity", r.quantity},
                    {"lambda", number(r.lambda)},
                    {"err", number(r.err)},
                    {"err_half", number(r.err_half)},
                    {"ratio", optional_number(r.ratio)},
                    {"pass", r.pass}});
  }
  return dump({{"config", config_json(cfg)}, {"reports", list}, {"all_pass", all_pass}});
}

std::string run_spectrum(const RunConfig& cfg) {
  cfg.validate();
  if (is_classical(cfg.medium)) throw ValidationError("classical media have no discrete spectrum");
  const MediumParams p{cfg.omega, cfg.resolved_lambda(), cfg.omega0};
  p.validate(cfg.medium);

  json levels = json::array();
  json converged = json::array();
  std::string source(to_string(cfg.spectrum));
  if (is_spin(cfg.medium)) {
    const auto s = spin_levels(p);
    levels = {number(s.ground), number(s.excited)};
    converged = {true, true};
    source = "two-level";
  } else if (cfg.spectrum == SpectrumSource::Exact) {
    oracle::BasisConfig basis;
    basis.size = cfg.basis_size;
    const auto s = oracle::ao_exact_spectrum(p, basis, cfg.levels);
    for (std::size_t n = 0; n < cfg.levels; ++n) {
      levels.push_back(number(s.levels[n]));
      converged.push_back(static_cast<bool>(s.converged[n]));
    }
  } else {
    for (std::size_t n = 0; n < cfg.levels; ++n) {
      levels.push_back(number(ao_level(n, p)));
      converged.push_back(true);
    }
  }
  return dump({{"config", config_json(cfg)},
               {"medium", std::string(to_string(cfg.medium))},
               {"source", source},
               {"levels", levels},
               {"converged", converged}});
}

void write_atomically(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qrefrig::cli
