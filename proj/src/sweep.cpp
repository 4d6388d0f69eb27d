#include "twophase/sweep.hpp"

#include "parallel.hpp"
#include "twophase/analytic.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace twophase {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void check_keys(const json& node, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!node.is_object()) throw ConfigError(field.empty() ? "<root>" : field, "expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (!ok.count(key)) throw ConfigError(join(field, key), "unknown key");
  }
}

const json& require(const json& node, const std::string& parent, const char* key) {
  if (!node.contains(key)) throw ConfigError(join(parent, key), "missing required field");
  return node.at(key);
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "must be finite");
  return x;
}

long long as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<long long>();
}

std::string as_string(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& field) {
  if (!v.is_boolean()) throw ConfigError(field, "expected true or false");
  return v.get<bool>();
}

CaseId parse_case(const json& node, const std::string& field) {
  check_keys(node, field, {"probe", "m"});
  CaseId id;
  try {
    id.probe = probe_kind_from_string(as_string(require(node, field, "probe"), join(field, "probe")));
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(join(field, "probe"), e.what());
  }
  const long long m = as_integer(require(node, field, "m"), join(field, "m"));
  if (m != 2 && m != 3) throw ConfigError(join(field, "m"), "must be 2 or 3");
  id.m = static_cast<int>(m);
  return id;
}

json case_json(const CaseId& id) { return {{"probe", std::string(to_string(id.probe))}, {"m", id.m}}; }


std::string_view to_string(GammaGrid::Spacing s) { return s == GammaGrid::Spacing::log ? "log" : "linear"; }

std::string_view to_string(Propagation p) { return p == Propagation::heisenberg ? "heisenberg" : "eigen"; }

bool parent_writable(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return false;
  if (fs::exists(p, ec)) return ::access(p.c_str(), W_OK) == 0;
  return ::access(dir.c_str(), W_OK) == 0;
}

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// One formatted cell; rows are built in frozen column order.
struct Cell {
  std::string text;
  bool quoted;  // JSON string rather than number/bool literal
};

Cell num(double v) { return {format_double(v), !std::isfinite(v)}; }

std::vector<Cell> row_cells(const SweepRow& r, double rescale_M) {
  const double M = rescale_M;
  const BoundSet& b = r.bounds;
  return {
      {to_string(r.case_id), true},
      {std::string(to_string(r.case_id.probe)), true},
      {std::to_string(r.case_id.m), false},
      num(r.nbar),
      num(r.gamma),
      num(r.phi1),
      {std::string(to_string(r.engine)), true},
      num(r.info.q11()),
      num(r.info.q12()),
      num(r.info.q22()),
      num(r.info.d12()),
      num(b.S),
      num(b.R),
      num(b.C_Q / M),
      num(b.C_T / M),
      num(b.C_step1 / M),
      num(b.beta_opt1),
      num(b.C_step2 / M),
      num(b.beta_opt2),
      {std::string(to_string(r.winner)), true},
      {b.degenerate ? "true" : "false", false},
      {std::to_string(r.dim), false},
      num(r.cross_dev),
      {r.status, true},
  };
}

SweepRow failed_row(SweepRow row, const std::string& status) {
  row.info.Q.setConstant(kNaN);
  row.info.D.setConstant(kNaN);
  BoundSet& b = row.bounds;
  b.S = b.detD = b.R = b.R_clamp = b.C_Q = b.C_T = b.C_step1 = b.C_step2 = b.beta_opt1 = b.beta_opt2 = kNaN;
  b.degenerate = false;
  row.winner = Winner::indeterminate;
  row.status = status;
  return row;
}

SweepRow compute_row(const SweepConfig& cfg, double nbar, double gamma) {
  SweepRow row;
  row.case_id = cfg.case_id;
  row.nbar = nbar;
  row.gamma = gamma;
  row.engine = cfg.engine;
  row.cross_dev = cfg.engine == EngineChoice::both ? 0.0 : kNaN;
  EngineOptions opts;
  opts.policy = cfg.truncation;
  opts.propagation = cfg.numeric.propagation;
  try {
    double theta = cfg.phi1.value;
    if (cfg.phi1.optimized) {
      const Engine search_engine = cfg.engine == EngineChoice::numeric ? Engine::numeric : Engine::analytic;
      try {
        theta = optimize_phase(search_engine, cfg.case_id, nbar, gamma, cfg.phi1.objective, opts).phi1;
      } catch (const DegenerateModelError&) {
        theta = 0.0;  // degenerate at every phase; the row reports it
      }
    }
    row.phi1 = theta;
    if (cfg.engine != EngineChoice::numeric) row.info = analytic_info(cfg.case_id, nbar, gamma, theta);
    if (cfg.engine != EngineChoice::analytic) {
      const InfoMatrices numeric = numeric_info(cfg.case_id, nbar, gamma, theta, opts.policy, opts.propagation, &row.dim);
      if (cfg.engine == EngineChoice::numeric)
        row.info = numeric;
      else
        row.cross_dev = max_relative_deviation(row.info, numeric);
    }
    row.bounds = bound_set(row.info, opts.degeneracy_eps);
    row.winner = classify(row.bounds.C_Q, row.bounds.C_T, row.bounds.C_step_min());
  } catch (const TruncationError& e) {
    return failed_row(row, std::string("truncation_failed: ") + e.what());
  } catch (const std::runtime_error& e) {
    return failed_row(row, std::string("numerical_failed: ") + e.what());
  }
  return row;
}

}  // namespace

int default_workers() {
  const char* env = std::getenv("TWOPHASE_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw ConfigError("TWOPHASE_WORKERS", "must be an integer in [1, 1024]");
  return static_cast<int>(v);
}

std::vector<double> GammaGrid::values() const {
  std::vector<double> v(points);
  if (points < 2) return v;
  for (int k = 0; k < points; ++k) {
    const double t = static_cast<double>(k) / (points - 1);
    if (spacing == Spacing::log) {
      const double lo = std::log10(min), hi = std::log10(max);
      v[k] = std::pow(10.0, lo + t * (hi - lo));
    } else {
      v[k] = min + t * (max - min);
    }
  }
  v.front() = min;
  v.back() = max;
  return v;
}

std::string_view to_string(EngineChoice engine) {
  switch (engine) {
    case EngineChoice::analytic: return "analytic";
    case EngineChoice::numeric: return "numeric";
    case EngineChoice::both: return "both";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

double numeric_safe_gamma_cap(int m, Propagation propagation) {
  if (propagation == Propagation::eigen) return m == 3 ? 0.3 : 2.0;
  return m == 3 ? 10.0 : 50.0;
}

double SweepConfig::effective_gamma_cap() const {
  return numeric.gamma_cap ? *numeric.gamma_cap : numeric_safe_gamma_cap(case_id.m, numeric.propagation);
}

SweepConfig parse_config(const json& doc) {
  check_keys(doc, "", {"case", "nbar", "gamma_grid", "phi1", "engine", "output", "truncation", "numeric", "workers",
                       "rescale_M"});
  SweepConfig cfg;
  cfg.case_id = parse_case(require(doc, "", "case"), "case");

  const json& nbar = require(doc, "", "nbar");
  if (nbar.is_number()) {
    cfg.nbar_list.push_back(as_number(nbar, "nbar"));
  } else if (nbar.is_array() && !nbar.empty()) {
    for (std::size_t i = 0; i < nbar.size(); ++i)
      cfg.nbar_list.push_back(as_number(nbar[i], "nbar[" + std::to_string(i) + "]"));
  } else {
    throw ConfigError("nbar", "expected a number or a non-empty array of numbers");
  }
  for (double n : cfg.nbar_list)
    if (n < 0.0) throw ConfigError("nbar", "photon numbers must be >= 0");

  if (doc.contains("phi1")) {
    const json& p = doc.at("phi1");
    check_keys(p, "phi1", {"mode", "value", "objective"});
    const std::string mode = as_string(require(p, "phi1", "mode"), "phi1.mode");
    if (mode == "fixed") {
      if (p.contains("objective")) throw ConfigError("phi1.objective", "only valid with mode \"optimized\"");
      cfg.phi1.value = p.contains("value") ? as_number(p.at("value"), "phi1.value") : 0.0;
    } else if (mode == "optimized") {
      if (p.contains("value")) throw ConfigError("phi1.value", "only valid with mode \"fixed\"");
      cfg.phi1.optimized = true;
      if (p.contains("objective")) {
        try {
          cfg.phi1.objective = objective_from_string(as_string(p.at("objective"), "phi1.objective"));
        } catch (const ConfigError&) {
          throw;
        } catch (const InputError& e) {
          throw ConfigError("phi1.objective", e.what());
        }
      }
    } else {
      throw ConfigError("phi1.mode", "expected \"fixed\" or \"optimized\"");
    }
  }

  const json& g = require(doc, "", "gamma_grid");
  check_keys(g, "gamma_grid", {"spacing", "min", "max", "points"});
  if (g.contains("spacing")) {
    const std::string s = as_string(g.at("spacing"), "gamma_grid.spacing");
    if (s == "log")
      cfg.gamma_grid.spacing = GammaGrid::Spacing::log;
    else if (s == "linear")
      cfg.gamma_grid.spacing = GammaGrid::Spacing::linear;
    else
      throw ConfigError("gamma_grid.spacing", "expected \"log\" or \"linear\"");
  }
  cfg.gamma_grid.min = as_number(require(g, "gamma_grid", "min"), "gamma_grid.min");
  cfg.gamma_grid.max = as_number(require(g, "gamma_grid", "max"), "gamma_grid.max");
  const long long points = as_integer(require(g, "gamma_grid", "points"), "gamma_grid.points");
  if (points < 2 || points > 1000000) throw ConfigError("gamma_grid.points", "must be in [2, 1000000]");
  cfg.gamma_grid.points = static_cast<int>(points);
  if (cfg.gamma_grid.min < 0.0) throw ConfigError("gamma_grid.min", "must be >= 0");
  if (!(cfg.gamma_grid.max > cfg.gamma_grid.min)) throw ConfigError("gamma_grid.max", "must exceed gamma_grid.min");
  if (cfg.gamma_grid.spacing == GammaGrid::Spacing::log && !(cfg.gamma_grid.min > 0.0))
    throw ConfigError("gamma_grid.min", "must be > 0 for log spacing");
  if (cfg.phi1.optimized && !(cfg.gamma_grid.min > 0.0))
    throw ConfigError("gamma_grid.min", "must be > 0 when phi1 is optimized (objectives diverge at gamma = 0)");

  if (doc.contains("engine")) {
    const std::string e = as_string(doc.at("engine"), "engine");
    if (e == "analytic")
      cfg.engine = EngineChoice::analytic;
    else if (e == "numeric")
      cfg.engine = EngineChoice::numeric;
    else if (e == "both")
      cfg.engine = EngineChoice::both;
    else
      throw ConfigError("engine", "expected \"analytic\", \"numeric\" or \"both\"");
  }

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) {
      cfg.output_path = as_string(o.at("path"), "output.path");
      if (cfg.output_path.empty()) throw ConfigError("output.path", "must not be empty");
    }
    if (o.contains("format")) {
      const std::string f = as_string(o.at("format"), "output.format");
      if (f == "csv")
        cfg.format = OutputFormat::csv;
      else if (f == "json")
        cfg.format = OutputFormat::json;
      else
        throw ConfigError("output.format", "expected \"csv\" or \"json\"");
    }
  }

  if (doc.contains("truncation")) {
    const json& t = doc.at("truncation");
    check_keys(t, "truncation", {"initial_dim", "growth_factor", "tail_tolerance", "convergence_rtol", "max_dim"});
    TruncationPolicy& p = cfg.truncation;
    if (t.contains("initial_dim")) {
      const long long v = as_integer(t.at("initial_dim"), "truncation.initial_dim");
      if (v < 0) throw ConfigError("truncation.initial_dim", "must be >= 0");
      p.initial_dim = static_cast<std::size_t>(v);
    }
    if (t.contains("growth_factor")) {
      const long long v = as_integer(t.at("growth_factor"), "truncation.growth_factor");
      if (v < 0) throw ConfigError("truncation.growth_factor", "must be >= 0");
      p.growth_factor = static_cast<std::size_t>(v);
    }
    if (t.contains("tail_tolerance")) p.tail_tolerance = as_number(t.at("tail_tolerance"), "truncation.tail_tolerance");
    if (t.contains("convergence_rtol"))
      p.convergence_rtol = as_number(t.at("convergence_rtol"), "truncation.convergence_rtol");
    if (t.contains("max_dim")) {
      const long long v = as_integer(t.at("max_dim"), "truncation.max_dim");
      if (v < 0) throw ConfigError("truncation.max_dim", "must be >= 0");
      p.max_dim = static_cast<std::size_t>(v);
    }
    try {
      p.validate();
    } catch (const InputError& e) {
      throw ConfigError("truncation", e.what());
    }
  }

  if (doc.contains("numeric")) {
    const json& n = doc.at("numeric");
    check_keys(n, "numeric", {"propagation", "gamma_cap", "allow_beyond_cap"});
    if (n.contains("propagation")) {
      const std::string p = as_string(n.at("propagation"), "numeric.propagation");
      if (p == "heisenberg")
        cfg.numeric.propagation = Propagation::heisenberg;
      else if (p == "eigen")
        cfg.numeric.propagation = Propagation::eigen;
      else
        throw ConfigError("numeric.propagation", "expected \"heisenberg\" or \"eigen\"");
    }
    if (n.contains("gamma_cap")) {
      const double cap = as_number(n.at("gamma_cap"), "numeric.gamma_cap");
      if (!(cap > 0.0)) throw ConfigError("numeric.gamma_cap", "must be > 0");
      cfg.numeric.gamma_cap = cap;
    }
    if (n.contains("allow_beyond_cap"))
      cfg.numeric.allow_beyond_cap = as_bool(n.at("allow_beyond_cap"), "numeric.allow_beyond_cap");
  }

  if (doc.contains("workers")) {
    const long long w = as_integer(doc.at("workers"), "workers");
    if (w < 1 || w > 1024) throw ConfigError("workers", "must be in [1, 1024]");
    cfg.workers = static_cast<int>(w);
  } else {
    cfg.workers = default_workers();
  }

  if (doc.contains("rescale_M")) {
    cfg.rescale_M = as_number(doc.at("rescale_M"), "rescale_M");
    if (!(cfg.rescale_M > 0.0)) throw ConfigError("rescale_M", "must be > 0");
  }
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const SweepConfig& cfg) {
  json doc;
  doc["case"] = case_json(cfg.case_id);
  doc["nbar"] = cfg.nbar_list;
  doc["gamma_grid"] = {{"spacing", std::string(to_string(cfg.gamma_grid.spacing))},
                       {"min", cfg.gamma_grid.min},
                       {"max", cfg.gamma_grid.max},
                       {"points", cfg.gamma_grid.points}};
  if (cfg.phi1.optimized)
    doc["phi1"] = {{"mode", "optimized"}, {"objective", std::string(to_string(cfg.phi1.objective))}};
  else
    doc["phi1"] = {{"mode", "fixed"}, {"value", cfg.phi1.value}};
  doc["engine"] = std::string(to_string(cfg.engine));
  doc["output"] = {{"path", cfg.output_path}, {"format", std::string(to_string(cfg.format))}};
  doc["truncation"] = {{"initial_dim", cfg.truncation.initial_dim},
                       {"growth_factor", cfg.truncation.growth_factor},
                       {"tail_tolerance", cfg.truncation.tail_tolerance},
                       {"convergence_rtol", cfg.truncation.convergence_rtol},
                       {"max_dim", cfg.truncation.max_dim}};
  doc["numeric"] = {{"propagation", std::string(to_string(cfg.numeric.propagation))},
                    {"gamma_cap", cfg.effective_gamma_cap()},
                    {"allow_beyond_cap", cfg.numeric.allow_beyond_cap}};
  doc["workers"] = cfg.workers;
  doc["rescale_M"] = cfg.rescale_M;
  return doc;
}

ValidationReport validate_config(const SweepConfig& cfg) {
  ValidationReport report;
  if (cfg.uses_numeric() && cfg.gamma_grid.max > cfg.effective_gamma_cap()) {
    const std::string msg = "gamma_max = " + format_double(cfg.gamma_grid.max) + " exceeds numeric safe cap " +
                            format_double(cfg.effective_gamma_cap()) + " for m = " + std::to_string(cfg.case_id.m);
    report.warnings.push_back({"gamma_grid.max", msg});
    if (!cfg.numeric.allow_beyond_cap)
      report.errors.push_back({"numeric.allow_beyond_cap", "set to true to run beyond the numeric safe cap"});
  }
  if (cfg.output_path != "-" && !parent_writable(cfg.output_path))
    report.errors.push_back({"output.path", "'" + cfg.output_path + "' is not writable"});
  return report;
}

std::size_t SweepResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.ok() ? 0 : 1;
  return n;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  const ValidationReport report = validate_config(cfg);
  if (!report.runnable()) throw ConfigError(report.errors.front().field, report.errors.front().message);
  const std::vector<double> gammas = cfg.gamma_grid.values();
  const std::size_t ng = gammas.size();
  SweepResult result;
  result.rows.resize(cfg.nbar_list.size() * ng);
  detail::parallel_for(result.rows.size(), cfg.workers, [&](std::size_t i) {
    result.rows[i] = compute_row(cfg, cfg.nbar_list[i / ng], gammas[i % ng]);
  });
  return result;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "case", "probe", "m",           "nbar",      "gamma",       "phi1",      "engine", "Q11",
      "Q12",  "Q22",   "D12",         "S",         "R",           "C_Q",       "C_T",    "C_step_min1",
      "beta_opt1", "C_step_min2", "beta_opt2", "winner", "degenerate", "dim", "cross_dev", "status"};
  return cols;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& out, const SweepResult& result, double rescale_M) {
  const auto& cols = sweep_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\r\n";
  for (const auto& row : result.rows) {
    const auto cells = row_cells(row, rescale_M);
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_field(cells[c].text);
    out << "\r\n";
  }
}

void write_json(std::ostream& out, const SweepResult& result, double rescale_M) {
  const auto& cols = sweep_columns();
  out << "[";
  for (std::size_t r = 0; r < result.rows.size(); ++r) {
    const auto cells = row_cells(result.rows[r], rescale_M);
    out << (r ? ",\n  {" : "\n  {");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c ? ", " : "") << json_string(cols[c]) << ": "
          << (cells[c].quoted ? json_string(cells[c].text) : cells[c].text);
    }
    out << "}";
  }
  out << (result.rows.empty() ? "]\n" : "\n]\n");
}

void write_result(std::ostream& out, const SweepResult& result, const SweepConfig& cfg) {
  if (cfg.format == OutputFormat::csv)
    write_csv(out, result, cfg.rescale_M);
  else
    write_json(out, result, cfg.rescale_M);
}

FigurePreset parse_figure_preset(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected an object");
  FigurePreset preset;
  if (!doc.contains("name")) throw ConfigError("name", "missing required field");
  preset.name = as_string(doc.at("name"), "name");
  const json& cases = require(doc, "", "cases");
  if (!cases.is_array() || cases.empty()) throw ConfigError("cases", "expected a non-empty array");
  for (std::size_t i = 0; i < cases.size(); ++i)
    preset.cases.push_back(parse_case(cases[i], "cases[" + std::to_string(i) + "]"));
  json base = doc;
  base.erase("name");
  base.erase("cases");
  if (base.contains("case")) throw ConfigError("case", "use \"cases\" in a figure preset");
  base["case"] = case_json(preset.cases.front());
  preset.base = parse_config(base);
  return preset;
}

namespace {

json all_cases_json() {
  return json::array({case_json({ProbeKind::squeezed_vacuum, 3}), case_json({ProbeKind::coherent, 3}),
                      case_json({ProbeKind::squeezed_vacuum, 2}), case_json({ProbeKind::coherent, 2})});
}

}  // namespace

json figure2_preset_json() {
  return {{"name", "figure2"},
          {"cases", all_cases_json()},
          {"nbar", {0.5, 1.0, 2.0}},
          {"gamma_grid", {{"spacing", "log"}, {"min", 0.01}, {"max", 10.0}, {"points", 121}}},
          {"phi1", {{"mode", "optimized"}, {"objective", "S"}}},
          {"engine", "analytic"},
          {"output", {{"format", "csv"}}}};
}

json figure3_preset_json() {
  return {{"name", "figure3"},
          {"cases", all_cases_json()},
          {"nbar", {1.0}},
          {"gamma_grid", {{"spacing", "log"}, {"min", 0.01}, {"max", 10.0}, {"points", 61}}},
          {"engine", "analytic"},
          {"output", {{"format", "csv"}}}};
}

void write_comparison_csv(std::ostream& out, const StrategyComparison& cmp) {
  out << "gamma,C_Q,phi1_C_Q,C_T,phi1_C_T,C_step1,phi1_step1,beta_opt1,C_step2,phi1_step2,beta_opt2,winner\r\n";
  for (const auto& p : cmp.points) {
    out << format_double(p.gamma) << ',' << format_double(p.c_q.value) << ',' << format_double(p.c_q.phi1) << ','
        << format_double(p.c_t.value) << ',' << format_double(p.c_t.phi1) << ',' << format_double(p.c_step1.value)
        << ',' << format_double(p.c_step1.phi1) << ',' << format_double(p.beta_opt1) << ','
        << format_double(p.c_step2.value) << ',' << format_double(p.c_step2.phi1) << ','
        << format_double(p.beta_opt2) << ',' << to_string(p.winner) << "\r\n";
  }
}

}  // namespace twophase
