#include "twophase/bounds.hpp"

#include "parallel.hpp"
#include "twophase/analytic.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <string>

namespace twophase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_degenerate(const InfoMatrices& info, double eps) {
  return !(info.det_q() > eps * info.q11() * info.q22());
}

void require_finite(const InfoMatrices& info) {
  if (!info.Q.allFinite() || !info.D.allFinite()) throw InputError("information matrices contain non-finite entries");
}

void require_nondegenerate(const InfoMatrices& info, const char* what) {
  if (is_degenerate(info, kDefaultDegeneracyEps))
    throw DegenerateModelError(std::string(what) + ": QFIM is singular (det Q = " + std::to_string(info.det_q()) + ")");
}

}  // namespace

BoundSet bound_set(const InfoMatrices& info, double degeneracy_eps) {
  require_finite(info);
  BoundSet b;
  b.detD = info.d12() * info.d12();
  if (is_degenerate(info, degeneracy_eps)) {
    b.degenerate = true;
    b.S = b.C_Q = b.C_T = b.C_step1 = b.C_step2 = kInf;
    b.beta_opt1 = b.beta_opt2 = kNaN;
    return b;
  }
  const double det = info.det_q();
  b.S = 1.0 / det;
  b.C_Q = (info.q11() + info.q22()) / det;
  const double r = std::sqrt(b.detD * b.S);
  b.R = std::min(r, 1.0);
  b.R_clamp = r - b.R;
  b.C_T = b.C_Q + 2.0 * b.S * std::abs(info.d12());
  const OptimalStep step = step_bounds_optimal(info);
  b.C_step1 = step.c_step_min1;
  b.C_step2 = step.c_step_min2;
  b.beta_opt1 = step.beta_opt1;
  b.beta_opt2 = step.beta_opt2;
  return b;
}

double t_w_via_singular_values(const InfoMatrices& info) {
  require_finite(info);
  require_nondegenerate(info, "T_W");
  const Eigen::Matrix2d qinv = info.Q.inverse();
  const Eigen::Matrix2d product = qinv * info.D * qinv;
  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(product);
  return svd.singularValues().sum() / qinv.trace();
}

StepBounds step_bounds(const InfoMatrices& info, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("allocation beta must lie in (0, 1)");
  require_finite(info);
  require_nondegenerate(info, "stepwise bounds");
  const double s = 1.0 / info.det_q();
  return {s * info.q22() / beta + 1.0 / ((1.0 - beta) * info.q22()),
          s * info.q11() / beta + 1.0 / ((1.0 - beta) * info.q11())};
}

OptimalStep step_bounds_optimal(const InfoMatrices& info) {
  require_finite(info);
  require_nondegenerate(info, "stepwise bounds");
  const double s = 1.0 / info.det_q();
  const double root_s = std::sqrt(s);
  // Strategy 1 spends beta on phi1 with phi2 unknown, so its curve is
  // governed by Q22; strategy 2 mirrors it with Q11.
  auto optimum = [&](double e) {
    const double beta = e * root_s / (e * root_s + 1.0);
    const double value = s * (e + 1.0 / root_s) * (e + 1.0 / root_s) / e;
    return std::make_pair(value, beta);
  };
  const auto [c1, b1] = optimum(info.q22());
  const auto [c2, b2] = optimum(info.q11());
  return {c1, b1, c2, b2};
}

std::string_view to_string(Engine engine) { return engine == Engine::analytic ? "analytic" : "numeric"; }

Engine engine_from_string(std::string_view name) {
  if (name == "analytic") return Engine::analytic;
  if (name == "numeric") return Engine::numeric;
  throw InputError("unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::S: return "S";
    case Objective::C_Q: return "C_Q";
    case Objective::C_T: return "C_T";
    case Objective::C_step_min: return "C_step_min";
    case Objective::C_step1: return "C_step1";
    case Objective::C_step2: return "C_step2";
  }
  return "?";
}

Objective objective_from_string(std::string_view name) {
  for (Objective o : {Objective::S, Objective::C_Q, Objective::C_T, Objective::C_step_min, Objective::C_step1,
                      Objective::C_step2}) {
    if (name == to_string(o)) return o;
  }
  throw InputError("unknown objective '" + std::string(name) + "' (expected S, C_Q, C_T, C_step_min, C_step1, C_step2)");
}

InfoMatrices evaluate_info(Engine engine, const CaseId& id, double nbar, double gamma, double theta,
                           const EngineOptions& opts) {
  if (engine == Engine::analytic) return analytic_info(id, nbar, gamma, theta);
  return numeric_info(id, nbar, gamma, theta, opts.policy, opts.propagation);
}

double objective_value(const BoundSet& b, Objective objective) {
  if (b.degenerate) return kInf;
  switch (objective) {
    case Objective::S: return b.S;
    case Objective::C_Q: return b.C_Q;
    case Objective::C_T: return b.C_T;
    case Objective::C_step_min: return b.C_step_min();
    case Objective::C_step1: return b.C_step1;
    case Objective::C_step2: return b.C_step2;
  }
  return kInf;
}

PhaseOptimum optimize_phase(Engine engine, const CaseId& id, double nbar, double gamma, Objective objective,
                            const EngineOptions& opts, const PeriodicSearch& search) {
  id.validate();
  if (!std::isfinite(gamma) || gamma < 0.0) throw InputError("gamma must be finite and >= 0");
  auto f = [&](double theta) {
    return objective_value(bound_set(evaluate_info(engine, id, nbar, gamma, theta, opts), opts.degeneracy_eps),
                           objective);
  };
  const ScalarMinimum m = minimize_periodic(f, search);
  if (!std::isfinite(m.value)) {
    throw DegenerateModelError("objective " + std::string(to_string(objective)) +
                               " is non-finite for every phase (gamma = " + std::to_string(gamma) + ")");
  }
  return {m.x, m.value};
}

std::string_view to_string(Winner winner) {
  switch (winner) {
    case Winner::joint: return "joint";
    case Winner::stepwise: return "stepwise";
    case Winner::indeterminate: return "indeterminate";
  }
  return "?";
}

Winner classify(double c_q, double c_t, double c_step_min) {
  if (c_step_min < c_q) return Winner::stepwise;
  if (c_t < c_step_min) return Winner::joint;
  return Winner::indeterminate;
}

StrategyComparison compare_strategies(Engine engine, const CaseId& id, double nbar,
                                      const std::vector<double>& gamma_grid, const EngineOptions& opts,
                                      int workers) {
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] > 0.0) || (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1])))
      throw InputError("gamma grid must be positive and strictly increasing");
  }
  StrategyComparison out;
  out.gamma_grid = gamma_grid;
  out.points.resize(gamma_grid.size());
  detail::parallel_for(gamma_grid.size(), workers, [&](std::size_t i) {
    StrategyPoint& p = out.points[i];
    p.gamma = gamma_grid[i];
    p.c_q = optimize_phase(engine, id, nbar, p.gamma, Objective::C_Q, opts);
    p.c_t = optimize_phase(engine, id, nbar, p.gamma, Objective::C_T, opts);
    p.c_step1 = optimize_phase(engine, id, nbar, p.gamma, Objective::C_step1, opts);
    p.c_step2 = optimize_phase(engine, id, nbar, p.gamma, Objective::C_step2, opts);
    p.beta_opt1 = bound_set(evaluate_info(engine, id, nbar, p.gamma, p.c_step1.phi1, opts)).beta_opt1;
    p.beta_opt2 = bound_set(evaluate_info(engine, id, nbar, p.gamma, p.c_step2.phi1, opts)).beta_opt2;
    p.winner = classify(p.c_q.value, p.c_t.value, p.c_step_min());
  });
  for (const auto& p : out.points) {
    out.winner_per_point.push_back(p.winner);
    if (!out.threshold_gamma && p.winner == Winner::joint) out.threshold_gamma = p.gamma;
  }
  return out;
}

}  // namespace twophase
