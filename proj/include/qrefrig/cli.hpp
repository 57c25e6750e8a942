#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrefrig/cycles.hpp"
#include "qrefrig/media.hpp"

namespace qrefrig::cli {

inline constexpr std::string_view kToolVersion = "qrefrig 1.0.0";

enum class CostCase { HotBath, ColdBath };  // "i": (beta_h, omega); "ii": (beta_c, omega')

/// Resolved run configuration. Defaults are the figure operating point
/// (beta_h = 1/2, beta_c = 1, omega = 5, omega' = 4, omega0 = 0.6^(1/3)).
struct RunConfig {
  CycleType cycle = CycleType::Otto;
  MediumKind medium = MediumKind::QuantumAnharmonic;
  double omega = 5.0;
  double omega_prime = 4.0;
  double beta_h = 0.5;
  double beta_c = 1.0;
  double beta1 = 1.0;
  double beta2 = 0.6;
  double beta3 = 0.5;
  double beta4 = 0.8;
  double omega0 = 0.0;  // set to cbrt(0.6) by the constructor
  std::optional<double> lambda;
  std::optional<double> g;
  double g_start = 0.0;
  double g_stop = 1.0;
  std::size_t g_count = 101;
  Backend backend = Backend::ClosedFormO1;
  SpectrumSource spectrum = SpectrumSource::FirstOrder;
  std::size_t basis_size = 128;
  CostCase cost_case = CostCase::HotBath;
  std::size_t levels = 8;
  std::string quantity = "all";
  std::string format;  // "csv" or "json"; empty picks the command default
  std::string output;  // empty writes to stdout

  RunConfig();

  /// Single-point anharmonic strength: lambda, or g * omega0^3, or 0.
  double resolved_lambda() const;
  /// g grid values, ascending.
  std::vector<double> g_grid() const;
  CycleParams cycle_params() const;
  ClassicalOttoParams classical_params() const;
  NumericOptions numeric_options() const;

  /// Grid and parameter sanity; throws ValidationError.
  void validate() const;
};

/// Every key accepted by `set`, in canonical order. Config files and
/// command-line flags share these names (flags use dashes for underscores).
const std::vector<std::string>& config_keys();

/// Applies one key=value setting; throws ValidationError on unknown keys or
/// malformed values.
void set(RunConfig& cfg, std::string_view key, std::string_view value);

/// Flat "key = value" text, '#' starts a comment.
void apply_config_text(RunConfig& cfg, std::string_view text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Resolved configuration as canonical key/value strings (defaults applied).
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg);

/// "%.12g".
std::string format_number(double x);

std::string run_cycle(const RunConfig& cfg);
std::string run_sweep(const RunConfig& cfg);
std::string run_figure(std::string_view name, const RunConfig& cfg);
std::string run_oracle_compare(const RunConfig& cfg);
std::string run_spectrum(const RunConfig& cfg);

inline constexpr std::string_view kFigureNames[] = {"fig2a", "fig2b", "fig3a", "fig3b", "figS2"};

/// Writes to `<path>.tmp`, then renames onto `path`.
void write_atomically(const std::string& path, std::string_view content);

}  // namespace qrefrig::cli
