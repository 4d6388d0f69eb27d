#pragma once

// Scalar figures of merit built from (Q, D) with weight matrix W = I, the
// stepwise-estimation bounds, and phase/strategy optimization on top of
// either engine. All bounds are per shot (M = 1).

#include "twophase/fock.hpp"
#include "twophase/model.hpp"
#include "twophase/optimize.hpp"
#include "twophase/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace twophase {

inline constexpr double kDefaultDegeneracyEps = 1e-10;

struct BoundSet {
  double S = 0.0;        ///< sloppiness 1/det Q
  double detD = 0.0;     ///< D12^2
  double R = 0.0;        ///< quantumness sqrt(det D / det Q), clamped to [0, 1]
  double R_clamp = 0.0;  ///< amount removed by the clamp
  double C_Q = 0.0;      ///< Tr Q^{-1}
  double C_T = 0.0;      ///< C_Q + 2 S |D12|
  double C_step1 = 0.0;  ///< stepwise bounds at their optimal allocations
  double C_step2 = 0.0;
  double beta_opt1 = 0.0;
  double beta_opt2 = 0.0;
  bool degenerate = false;

  double C_step_min() const { return C_step1 < C_step2 ? C_step1 : C_step2; }
};

/// Bounds at one model point. When det Q <= degeneracy_eps * Q11 Q22 the
/// set is flagged degenerate: S, C_Q, C_T and the stepwise bounds are +inf,
/// R is 0 and the allocations are NaN.
BoundSet bound_set(const InfoMatrices& info, double degeneracy_eps = kDefaultDegeneracyEps);

/// T_W = ||Q^{-1} D Q^{-1}||_1 / C_Q from the singular values of the
/// explicit product.
double t_w_via_singular_values(const InfoMatrices& info);

struct StepBounds {
  double c_step1 = 0.0;
  double c_step2 = 0.0;
};

/// Stepwise bounds with a fraction `beta` of the shots spent on the first
/// step: C1 = S Q22 / beta + 1 / ((1 - beta) Q22), C2 likewise with Q11.
StepBounds step_bounds(const InfoMatrices& info, double beta);

struct OptimalStep {
  double c_step_min1 = 0.0;
  double beta_opt1 = 0.0;
  double c_step_min2 = 0.0;
  double beta_opt2 = 0.0;
};

/// Closed-form minimum of step_bounds over beta.
OptimalStep step_bounds_optimal(const InfoMatrices& info);

enum class Engine { analytic, numeric };

enum class Objective { S, C_Q, C_T, C_step_min, C_step1, C_step2 };

std::string_view to_string(Engine engine);
Engine engine_from_string(std::string_view name);
std::string_view to_string(Objective objective);
Objective objective_from_string(std::string_view name);

struct EngineOptions {
  TruncationPolicy policy;
  Propagation propagation = Propagation::heisenberg;
  double degeneracy_eps = kDefaultDegeneracyEps;
};

/// Information matrices from the selected engine at relative phase `theta`.
InfoMatrices evaluate_info(Engine engine, const CaseId& id, double nbar, double gamma, double theta,
                           const EngineOptions& opts = {});

/// The value of `objective` in a bound set (+inf for degenerate sets).
double objective_value(const BoundSet& bounds, Objective objective);

struct PhaseOptimum {
  double phi1 = 0.0;  ///< relative phase theta in [0, 2 pi)
  double value = 0.0;
};

/// Minimizes `objective` over the relative phase (512-point scan plus
/// golden-section refinement to 1e-8). Throws DegenerateModelError when the
/// objective is non-finite on the whole scan.
PhaseOptimum optimize_phase(Engine engine, const CaseId& id, double nbar, double gamma, Objective objective,
                            const EngineOptions& opts = {}, const PeriodicSearch& search = {});

enum class Winner { joint, stepwise, indeterminate };
std::string_view to_string(Winner winner);

/// Conservative classification: stepwise if its best bound is below C_Q,
/// joint if C_T is below it, indeterminate in between.
Winner classify(double c_q, double c_t, double c_step_min);

struct StrategyPoint {
  double gamma = 0.0;
  PhaseOptimum c_q, c_t, c_step1, c_step2;
  double beta_opt1 = 0.0;  ///< allocation at C_step1's optimal phase
  double beta_opt2 = 0.0;
  Winner winner = Winner::indeterminate;

  double c_step_min() const { return c_step1.value < c_step2.value ? c_step1.value : c_step2.value; }
};

struct StrategyComparison {
  std::vector<double> gamma_grid;
  std::vector<Winner> winner_per_point;
  std::vector<StrategyPoint> points;
  std::optional<double> threshold_gamma;  ///< first joint-win point
};

/// Each bound is optimized over the phase independently at every gamma.
/// Grid points are evaluated by up to `workers` threads; results are in
/// grid order.
StrategyComparison compare_strategies(Engine engine, const CaseId& id, double nbar,
                                      const std::vector<double>& gamma_grid, const EngineOptions& opts = {},
                                      int workers = 1);

}  // namespace twophase
