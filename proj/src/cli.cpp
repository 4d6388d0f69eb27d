#include "twophase/cli.hpp"

#include "twophase/analytic.hpp"
#include "twophase/bounds.hpp"
#include "twophase/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace twophase {

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2 };

// Flags shared by `sweep` and `validate`; each one set on the command line
// overrides the corresponding config-file value.
struct SweepFlags {
  std::string config;
  std::optional<std::string> probe, spacing, objective, engine, output, format, propagation;
  std::optional<int> m, points, workers;
  std::optional<double> gamma_min, gamma_max, phi1, rescale_M, gamma_cap;
  std::optional<std::size_t> max_dim;
  std::vector<double> nbar;
  bool allow_beyond_cap = false;

  void add_to(CLI::App* app) {
    app->add_option("config", config, "JSON config file")->check(CLI::ExistingFile);
    app->add_option("--probe", probe, "coherent | squeezed_vacuum");
    app->add_option("--m", m, "scrambler order (2 or 3)");
    app->add_option("--nbar", nbar, "mean photon numbers")->delimiter(',');
    app->add_option("--gamma-min", gamma_min);
    app->add_option("--gamma-max", gamma_max);
    app->add_option("--points", points);
    app->add_option("--spacing", spacing, "log | linear");
    app->add_option("--phi1", phi1, "fixed relative phase")->excludes(app->add_option("--objective", objective,
                                                                                     "optimize the phase for this objective"));
    app->add_option("--engine", engine, "analytic | numeric | both");
    app->add_option("--output", output, "output path ('-' for stdout)");
    app->add_option("--format", format, "csv | json");
    app->add_option("--workers", workers);
    app->add_option("--rescale-M", rescale_M, "divide the C bounds by M repetitions");
    app->add_option("--max-dim", max_dim, "truncation.max_dim");
    app->add_option("--propagation", propagation, "heisenberg | eigen");
    app->add_option("--gamma-cap", gamma_cap, "numeric safe cap override");
    app->add_flag("--allow-beyond-cap", allow_beyond_cap, "run the numeric engine beyond its safe cap");
  }

  json document() const {
    json doc = json::object();
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError("<file>", "cannot open config file '" + config + "'");
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
      }
      if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
    }
    auto section = [&](const char* key) -> json& {
      json& s = doc[key];
      if (s.is_null()) s = json::object();
      if (!s.is_object()) throw ConfigError(key, "expected an object");
      return s;
    };
    if (probe) section("case")["probe"] = *probe;
    if (m) section("case")["m"] = *m;
    if (!nbar.empty()) doc["nbar"] = nbar;
    if (gamma_min) section("gamma_grid")["min"] = *gamma_min;
    if (gamma_max) section("gamma_grid")["max"] = *gamma_max;
    if (points) section("gamma_grid")["points"] = *points;
    if (spacing) section("gamma_grid")["spacing"] = *spacing;
    if (phi1) doc["phi1"] = {{"mode", "fixed"}, {"value", *phi1}};
    if (objective) doc["phi1"] = {{"mode", "optimized"}, {"objective", *objective}};
    if (engine) doc["engine"] = *engine;
    if (output) section("output")["path"] = *output;
    if (format) section("output")["format"] = *format;
    if (workers) doc["workers"] = *workers;
    if (rescale_M) doc["rescale_M"] = *rescale_M;
    if (max_dim) section("truncation")["max_dim"] = *max_dim;
    if (propagation) section("numeric")["propagation"] = *propagation;
    if (gamma_cap) section("numeric")["gamma_cap"] = *gamma_cap;
    if (allow_beyond_cap) section("numeric")["allow_beyond_cap"] = true;
    return doc;
  }
};

struct PointFlags {
  std::string probe;
  int m = 2;
  double nbar = 1.0;
  double gamma = 0.0;
  double phi1 = 0.0;
  std::optional<std::size_t> max_dim;
  std::string propagation = "heisenberg";
  bool allow_beyond_cap = false;

  void add_to(CLI::App* app) {
    app->add_option("--probe", probe, "coherent | squeezed_vacuum")->required();
    app->add_option("--m", m, "scrambler order (2 or 3)")->required();
    app->add_option("--nbar", nbar)->capture_default_str();
    app->add_option("--gamma", gamma)->required();
    app->add_option("--phi1", phi1, "relative phase")->capture_default_str();
    app->add_option("--max-dim", max_dim);
    app->add_option("--propagation", propagation)->capture_default_str();
    app->add_flag("--allow-beyond-cap", allow_beyond_cap);
  }
};

struct FigureFlags {
  std::string out_dir = ".";
  std::string preset;
  std::optional<int> workers;

  void add_to(CLI::App* app) {
    app->add_option("--out-dir", out_dir, "directory for the data files")->capture_default_str();
    app->add_option("--preset", preset, "preset file (defaults to the built-in preset)")->check(CLI::ExistingFile);
    app->add_option("--workers", workers);
  }
};

struct ThresholdFlags {
  std::string probe;
  int m = 2;
  double nbar = 1.0;
  double gamma_min = 0.01;
  double gamma_max = 10.0;
  int points = 61;
  std::string engine = "analytic";
  std::string output = "-";
  std::optional<int> workers;

  void add_to(CLI::App* app) {
    app->add_option("--probe", probe, "coherent | squeezed_vacuum")->required();
    app->add_option("--m", m, "scrambler order (2 or 3)")->required();
    app->add_option("--nbar", nbar)->capture_default_str();
    app->add_option("--gamma-min", gamma_min)->capture_default_str();
    app->add_option("--gamma-max", gamma_max)->capture_default_str();
    app->add_option("--points", points, "log-spaced grid points")->capture_default_str();
    app->add_option("--engine", engine, "analytic | numeric")->capture_default_str();
    app->add_option("--output", output, "comparison table path ('-' for stdout)")->capture_default_str();
    app->add_option("--workers", workers);
  }
};

Propagation propagation_from_string(const std::string& s) {
  if (s == "heisenberg") return Propagation::heisenberg;
  if (s == "eigen") return Propagation::eigen;
  throw ConfigError("--propagation", "expected heisenberg or eigen");
}

CaseId case_from_flags(const std::string& probe, int m) {
  CaseId id;
  try {
    id.probe = probe_kind_from_string(probe);
  } catch (const InputError& e) {
    throw ConfigError("--probe", e.what());
  }
  if (m != 2 && m != 3) throw ConfigError("--m", "must be 2 or 3");
  id.m = m;
  return id;
}

void write_to(const std::string& path, std::ostream& out, const std::string& text) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) throw ConfigError("output.path", "cannot write '" + path + "'");
}

int cmd_validate(const SweepFlags& flags, std::ostream& out, std::ostream& err) {
  const json doc = flags.document();
  std::vector<SweepConfig> configs;
  if (doc.contains("cases")) {
    // Figure presets carry a case list; each case is checked as its own sweep.
    const FigurePreset preset = parse_figure_preset(doc);
    for (const CaseId& id : preset.cases) {
      configs.push_back(preset.base);
      configs.back().case_id = id;
    }
  } else {
    configs.push_back(parse_config(doc));
  }
  bool runnable = true;
  for (const SweepConfig& cfg : configs) {
    const ValidationReport report = validate_config(cfg);
    out << to_json(cfg).dump(2) << "\n";
    for (const auto& w : report.warnings) err << "warning: " << w.text() << "\n";
    for (const auto& e : report.errors) err << "error: " << e.text() << "\n";
    runnable = runnable && report.runnable();
  }
  return runnable ? kOk : kUsage;
}

int cmd_sweep(const SweepFlags& flags, std::ostream& out, std::ostream& err) {
  const SweepConfig cfg = parse_config(flags.document());
  const ValidationReport report = validate_config(cfg);
  for (const auto& w : report.warnings) err << "warning: " << w.text() << "\n";
  for (const auto& e : report.errors) err << "error: " << e.text() << "\n";
  if (!report.runnable()) return kUsage;
  const SweepResult result = run_sweep(cfg);
  std::ostringstream text;
  write_result(text, result, cfg);
  write_to(cfg.output_path, out, text.str());
  if (result.failures() > 0) {
    err << "error: " << result.failures() << " of " << result.rows.size() << " rows failed; see the status column\n";
    return kNumerical;
  }
  return kOk;
}

double entry_deviation(double a, double b, double floor) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

int cmd_crosscheck(const PointFlags& f, std::ostream& out, std::ostream& err) {
  const CaseId id = case_from_flags(f.probe, f.m);
  if (!(f.nbar >= 0.0) || !std::isfinite(f.nbar)) throw ConfigError("--nbar", "must be finite and >= 0");
  if (!(f.gamma >= 0.0) || !std::isfinite(f.gamma)) throw ConfigError("--gamma", "must be finite and >= 0");
  if (!std::isfinite(f.phi1)) throw ConfigError("--phi1", "must be finite");
  const Propagation propagation = propagation_from_string(f.propagation);
  const double cap = numeric_safe_gamma_cap(id.m, propagation);
  if (f.gamma > cap) {
    err << "warning: gamma = " << format_double(f.gamma) << " exceeds numeric safe cap " << format_double(cap)
        << " for m = " << id.m << "\n";
    if (!f.allow_beyond_cap) {
      err << "error: pass --allow-beyond-cap to run anyway\n";
      return kUsage;
    }
  }
  TruncationPolicy policy;
  if (f.max_dim) policy.max_dim = *f.max_dim;
  try {
    policy.validate();
  } catch (const InputError& e) {
    throw ConfigError("--max-dim", e.what());
  }

  const InfoMatrices a = analytic_info(id, f.nbar, f.gamma, f.phi1);
  std::size_t dim = 0;
  const InfoMatrices n = numeric_info(id, f.nbar, f.gamma, f.phi1, policy, propagation, &dim);
  const double floor = 1e-12 * std::max(a.Q.cwiseAbs().maxCoeff(), n.Q.cwiseAbs().maxCoeff());
  const BoundSet ba = bound_set(a), bn = bound_set(n);

  out << "case " << to_string(id) << "  nbar " << format_double(f.nbar) << "  gamma " << format_double(f.gamma)
      << "  phi1 " << format_double(f.phi1) << "\n";
  out << "entry,analytic,numeric,rel_dev\n";
  const std::pair<const char*, std::pair<double, double>> entries[] = {{"Q11", {a.q11(), n.q11()}},
                                                                       {"Q12", {a.q12(), n.q12()}},
                                                                       {"Q22", {a.q22(), n.q22()}},
                                                                       {"D12", {a.d12(), n.d12()}}};
  double worst = 0.0;
  for (const auto& [name, v] : entries) {
    const double dev = entry_deviation(v.first, v.second, floor);
    worst = std::max(worst, dev);
    out << name << ',' << format_double(v.first) << ',' << format_double(v.second) << ',' << format_double(dev)
        << "\n";
  }
  out << "det_Q," << format_double(a.det_q()) << ',' << format_double(n.det_q()) << ",\n";
  out << "degenerate," << (ba.degenerate ? "true" : "false") << ',' << (bn.degenerate ? "true" : "false") << ",\n";
  out << "dim " << dim << " (max_dim " << policy.max_dim << ")\n";
  const bool pass = worst < 1e-6 && ba.degenerate == bn.degenerate;
  out << (pass ? "PASS" : "FAIL") << " max_rel_dev " << format_double(worst) << "\n";
  return pass ? kOk : kNumerical;
}

FigurePreset load_preset(const FigureFlags& f, json builtin) {
  json doc = builtin;
  if (!f.preset.empty()) {
    std::ifstream in(f.preset);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
    }
  }
  if (f.workers) doc["workers"] = *f.workers;
  return parse_figure_preset(doc);
}

void require_dir(const std::string& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw ConfigError("--out-dir", "'" + dir + "' is not a directory");
}

int cmd_figure2(const FigureFlags& f, std::ostream& out, std::ostream& err) {
  const FigurePreset preset = load_preset(f, figure2_preset_json());
  require_dir(f.out_dir);
  std::size_t failures = 0;
  for (const CaseId& id : preset.cases) {
    SweepConfig cfg = preset.base;
    cfg.case_id = id;
    cfg.output_path = (std::filesystem::path(f.out_dir) /
                       (preset.name + "_" + to_string(id) + (cfg.format == OutputFormat::csv ? ".csv" : ".json")))
                          .string();
    const SweepResult result = run_sweep(cfg);
    std::ostringstream text;
    write_result(text, result, cfg);
    write_to(cfg.output_path, out, text.str());
    failures += result.failures();
    out << cfg.output_path << "\n";
  }
  if (failures > 0) {
    err << "error: " << failures << " rows failed; see the status column\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_figure3(const FigureFlags& f, std::ostream& out, std::ostream&) {
  const FigurePreset preset = load_preset(f, figure3_preset_json());
  require_dir(f.out_dir);
  const SweepConfig& base = preset.base;
  if (base.engine == EngineChoice::both) throw ConfigError("engine", "figure3 needs a single engine");
  const Engine engine = base.engine == EngineChoice::numeric ? Engine::numeric : Engine::analytic;
  EngineOptions opts;
  opts.policy = base.truncation;
  opts.propagation = base.numeric.propagation;
  for (const CaseId& id : preset.cases) {
    for (double nbar : base.nbar_list) {
      const StrategyComparison cmp = compare_strategies(engine, id, nbar, base.gamma_grid.values(), opts, base.workers);
      std::string stem = preset.name + "_" + to_string(id);
      if (base.nbar_list.size() > 1) stem += "_nbar" + format_double(nbar);
      const std::string path = (std::filesystem::path(f.out_dir) / (stem + ".csv")).string();
      std::ostringstream text;
      write_comparison_csv(text, cmp);
      write_to(path, out, text.str());
      out << path << " threshold_gamma="
          << (cmp.threshold_gamma ? format_double(*cmp.threshold_gamma) : std::string("none")) << "\n";
    }
  }
  return kOk;
}

int cmd_threshold(const ThresholdFlags& f, std::ostream& out, std::ostream& err) {
  const CaseId id = case_from_flags(f.probe, f.m);
  if (!(f.nbar >= 0.0)) throw ConfigError("--nbar", "must be >= 0");
  if (!(f.gamma_min > 0.0)) throw ConfigError("--gamma-min", "must be > 0");
  if (!(f.gamma_max > f.gamma_min)) throw ConfigError("--gamma-max", "must exceed --gamma-min");
  if (f.points < 2) throw ConfigError("--points", "must be >= 2");
  Engine engine;
  try {
    engine = engine_from_string(f.engine);
  } catch (const InputError& e) {
    throw ConfigError("--engine", e.what());
  }
  if (engine == Engine::numeric && f.gamma_max > numeric_safe_gamma_cap(id.m)) {
    err << "error: --gamma-max exceeds numeric safe cap " << format_double(numeric_safe_gamma_cap(id.m)) << "\n";
    return kUsage;
  }
  int workers = default_workers();
  if (f.workers) {
    if (*f.workers < 1) throw ConfigError("--workers", "must be >= 1");
    workers = *f.workers;
  }
  GammaGrid grid{GammaGrid::Spacing::log, f.gamma_min, f.gamma_max, f.points};
  const StrategyComparison cmp = compare_strategies(engine, id, f.nbar, grid.values(), {}, workers);
  std::ostringstream text;
  write_comparison_csv(text, cmp);
  write_to(f.output, out, text.str());
  std::ostream& summary = f.output == "-" ? err : out;
  summary << to_string(id) << " nbar " << format_double(f.nbar) << " threshold_gamma="
          << (cmp.threshold_gamma ? format_double(*cmp.threshold_gamma) : std::string("none")) << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-phase sensing with a nonlinear scrambler: information matrices, bounds and sweeps", "twophase"};
  app.require_subcommand(1);

  SweepFlags sweep_flags, validate_flags;
  PointFlags point_flags;
  FigureFlags fig2_flags, fig3_flags;
  ThresholdFlags threshold_flags;

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep_flags.add_to(sweep);
  auto* validate = app.add_subcommand("validate", "check a config and print the effective settings");
  validate_flags.add_to(validate);
  auto* crosscheck = app.add_subcommand("crosscheck", "compare both engines at one point");
  point_flags.add_to(crosscheck);
  auto* figure2 = app.add_subcommand("figure2", "sloppiness curves for the four cases");
  fig2_flags.add_to(figure2);
  auto* figure3 = app.add_subcommand("figure3", "optimized bounds and strategy regimes for the four cases");
  fig3_flags.add_to(figure3);
  auto* threshold = app.add_subcommand("threshold", "classify strategies along a gamma grid");
  threshold_flags.add_to(threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_flags, out, err);
    if (validate->parsed()) return cmd_validate(validate_flags, out, err);
    if (crosscheck->parsed()) return cmd_crosscheck(point_flags, out, err);
    if (figure2->parsed()) return cmd_figure2(fig2_flags, out, err);
    if (figure3->parsed()) return cmd_figure3(fig3_flags, out, err);
    if (threshold->parsed()) return cmd_threshold(threshold_flags, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace twophase
