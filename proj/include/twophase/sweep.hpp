#pragma once

// Parameter sweeps over (nbar, gamma) with either engine, the config format
// that drives them, and the figure presets.

#include "twophase/bounds.hpp"
#include "twophase/errors.hpp"
#include "twophase/fock.hpp"
#include "twophase/model.hpp"
#include "twophase/types.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twophase {

/// Configuration problem; `field()` is the dotted path of the offending key.
class ConfigError : public InputError {
public:
  ConfigError(std::string field, const std::string& message)
      : InputError(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

struct GammaGrid {
  enum class Spacing { log, linear };
  Spacing spacing = Spacing::log;
  double min = 0.0;
  double max = 0.0;
  int points = 0;

  /// Grid values; the end points are hit exactly.
  std::vector<double> values() const;
};

struct Phi1Mode {
  bool optimized = false;
  double value = 0.0;  ///< relative phase used when not optimized
  Objective objective = Objective::S;
};

enum class EngineChoice { analytic, numeric, both };
enum class OutputFormat { csv, json };

std::string_view to_string(EngineChoice engine);
std::string_view to_string(OutputFormat format);

struct NumericSettings {
  Propagation propagation = Propagation::heisenberg;
  std::optional<double> gamma_cap;  ///< unset: numeric_safe_gamma_cap(m)
  bool allow_beyond_cap = false;
};

/// Largest gamma the numeric engine accepts without an explicit override.
double numeric_safe_gamma_cap(int m, Propagation propagation = Propagation::heisenberg);

struct SweepConfig {
  CaseId case_id;
  std::vector<double> nbar_list;
  GammaGrid gamma_grid;
  Phi1Mode phi1;
  EngineChoice engine = EngineChoice::analytic;
  std::string output_path = "-";  ///< "-" writes to the caller's stream
  OutputFormat format = OutputFormat::csv;
  TruncationPolicy truncation;
  NumericSettings numeric;
  int workers = 1;
  double rescale_M = 1.0;

  double effective_gamma_cap() const;
  bool uses_numeric() const { return engine != EngineChoice::analytic; }
};

/// Worker count from the TWOPHASE_WORKERS environment variable (1 if unset).
int default_workers();

/// Parses a config document. Missing `workers` falls back to the
/// TWOPHASE_WORKERS environment variable, then 1. Unknown keys are errors.
SweepConfig parse_config(const nlohmann::json& doc);
SweepConfig load_config(const std::string& path);
nlohmann::json to_json(const SweepConfig& config);

struct ConfigIssue {
  std::string field;
  std::string message;
  std::string text() const { return field + ": " + message; }
};

struct ValidationReport {
  std::vector<ConfigIssue> errors;
  std::vector<ConfigIssue> warnings;
  bool runnable() const { return errors.empty(); }
};

/// Dry-run check of grids, the numeric cap and the output path.
ValidationReport validate_config(const SweepConfig& config);

struct SweepRow {
  CaseId case_id;
  double nbar = 0.0;
  double gamma = 0.0;
  double phi1 = 0.0;
  EngineChoice engine = EngineChoice::analytic;
  InfoMatrices info;
  BoundSet bounds;
  Winner winner = Winner::indeterminate;
  std::size_t dim = 0;      ///< certified numeric truncation (0 for analytic)
  double cross_dev = 0.0;   ///< NaN unless engine = both
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t failures() const;
};

/// Rows in (nbar, gamma) order. Truncation or numerical failures flag the
/// row and the sweep continues. Throws ConfigError for invalid configs.
SweepResult run_sweep(const SweepConfig& config);

/// Frozen column list shared by the CSV header and the JSON keys.
const std::vector<std::string>& sweep_columns();

/// "%.17g", with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

void write_csv(std::ostream& out, const SweepResult& result, double rescale_M = 1.0);
void write_json(std::ostream& out, const SweepResult& result, double rescale_M = 1.0);
void write_result(std::ostream& out, const SweepResult& result, const SweepConfig& config);

/// A sweep config applied to several cases (`cases` replaces `case`).
struct FigurePreset {
  std::string name;
  std::vector<CaseId> cases;
  SweepConfig base;
};

FigurePreset parse_figure_preset(const nlohmann::json& doc);
nlohmann::json figure2_preset_json();
nlohmann::json figure3_preset_json();

/// One strategy-comparison table: gamma, C_Q, phi1_C_Q, C_T, phi1_C_T,
/// C_step1, phi1_step1, beta_opt1, C_step2, phi1_step2, beta_opt2, winner.
void write_comparison_csv(std::ostream& out, const StrategyComparison& comparison);

}  // namespace twophase
