#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twophase/analytic.hpp"
#include "twophase/bounds.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace twophase;

namespace {

InfoMatrices random_info(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double q11 = 0.1 + 20.0 * u(rng), q22 = 0.1 + 200.0 * u(rng);
    const double q12 = (2.0 * u(rng) - 1.0) * std::sqrt(q11 * q22);
    const InfoMatrices info = InfoMatrices::from_entries(q11, q12, q22, 20.0 * (2.0 * u(rng) - 1.0));
    if (info.det_q() > 1e-3 * q11 * q22) return info;
  }
}

}  // namespace

TEST_CASE("bound set on a hand-made point") {
  const BoundSet b = bound_set(InfoMatrices::from_entries(4.0, 1.0, 3.0, 2.0));
  CHECK_FALSE(b.degenerate);
  CHECK(b.S == doctest::Approx(1.0 / 11.0));
  CHECK(b.C_Q == doctest::Approx(7.0 / 11.0));
  CHECK(b.C_T == doctest::Approx(1.0));
  CHECK(b.detD == doctest::Approx(4.0));
  CHECK(b.R == doctest::Approx(std::sqrt(4.0 / 11.0)));
  CHECK(b.R_clamp == 0.0);
  // C1 = S Q22 / beta + 1 / ((1 - beta) Q22) at its minimum.
  const double s = 1.0 / 11.0, e = 3.0;
  CHECK(b.C_step1 == doctest::Approx(s * (e + 1.0 / std::sqrt(s)) * (e + 1.0 / std::sqrt(s)) / e));
  CHECK(b.C_step_min() == std::min(b.C_step1, b.C_step2));
}

TEST_CASE("degenerate and clamped points") {
  const BoundSet d = bound_set(InfoMatrices::from_entries(2.0, 2.0, 2.0, 0.5));
  CHECK(d.degenerate);
  CHECK(std::isinf(d.S));
  CHECK(std::isinf(d.C_T));
  CHECK(std::isnan(d.beta_opt1));
  CHECK_THROWS_AS(t_w_via_singular_values(InfoMatrices::from_entries(2.0, 2.0, 2.0, 0.5)), DegenerateModelError);
  CHECK_THROWS_AS(step_bounds(InfoMatrices::from_entries(2.0, 2.0, 2.0, 0.5), 0.5), DegenerateModelError);

  const BoundSet c = bound_set(InfoMatrices::from_entries(1.0, 0.0, 1.0, 3.0));
  CHECK(c.R == 1.0);
  CHECK(c.R_clamp == doctest::Approx(2.0));

  InfoMatrices bad = InfoMatrices::from_entries(1.0, 0.0, 1.0, 0.0);
  bad.Q(0, 0) = NAN;
  CHECK_THROWS_AS(bound_set(bad), InputError);
  CHECK_THROWS_AS(step_bounds(InfoMatrices::from_entries(4.0, 1.0, 3.0, 2.0), 1.0), InputError);
}

TEST_CASE("T_W identity") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const InfoMatrices info = random_info(rng);
    const BoundSet b = bound_set(info);
    const double lhs = (1.0 + t_w_via_singular_values(info)) * b.C_Q;
    CHECK(std::abs(lhs - b.C_T) <= 1e-10 * b.C_T);
  }
}

TEST_CASE("closed-form allocation against a beta grid") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const InfoMatrices info = random_info(rng);
    const OptimalStep opt = step_bounds_optimal(info);
    const int n = 10000;
    double best1 = INFINITY, best2 = INFINITY;
    for (int k = 1; k < n; ++k) {
      const StepBounds sb = step_bounds(info, double(k) / n);
      best1 = std::min(best1, sb.c_step1);
      best2 = std::min(best2, sb.c_step2);
    }
    CHECK(opt.c_step_min1 <= best1 * (1.0 + 1e-12));
    CHECK(opt.c_step_min2 <= best2 * (1.0 + 1e-12));
    CHECK(best1 == doctest::Approx(opt.c_step_min1).epsilon(1e-5));
    CHECK(step_bounds(info, opt.beta_opt1).c_step1 == doctest::Approx(opt.c_step_min1).epsilon(1e-12));
    CHECK(step_bounds(info, opt.beta_opt2).c_step2 == doctest::Approx(opt.c_step_min2).epsilon(1e-12));
  }
}

TEST_CASE("phase optimization") {
  const CaseId sq3{ProbeKind::squeezed_vacuum, 3};
  const PhaseOptimum s = optimize_phase(Engine::analytic, sq3, 1.0, 0.5, Objective::S);
  const PhaseOptimum ct = optimize_phase(Engine::analytic, sq3, 1.0, 0.5, Objective::C_T);
  CHECK(std::abs(s.phi1 - ct.phi1) > 1e-3);
  CHECK(s.phi1 >= 0.0);
  CHECK(s.phi1 < 2.0 * std::numbers::pi);

  // The search lands on the continuous-branch quadratic optimum, the
  // smallest of its periodic copies.
  CHECK(optimize_phase(Engine::analytic, {ProbeKind::coherent, 2}, 1.0, 1.0, Objective::S).phi1 ==
        doctest::Approx(optimal_phase_quadratic(ProbeKind::coherent, 1.0)).epsilon(1e-6));

  const PhaseOptimum num = optimize_phase(Engine::numeric, {ProbeKind::coherent, 3}, 1.0, 0.3, Objective::C_Q);
  const PhaseOptimum ana = optimize_phase(Engine::analytic, {ProbeKind::coherent, 3}, 1.0, 0.3, Objective::C_Q);
  CHECK(num.value == doctest::Approx(ana.value).epsilon(1e-8));
  CHECK(num.phi1 == doctest::Approx(ana.phi1).epsilon(1e-5));

  CHECK_THROWS_AS(optimize_phase(Engine::analytic, sq3, 1.0, 0.0, Objective::S), DegenerateModelError);
  CHECK_THROWS_AS(optimize_phase(Engine::analytic, sq3, 1.0, -1.0, Objective::S), InputError);
}

TEST_CASE("objective names") {
  for (Objective o : {Objective::S, Objective::C_Q, Objective::C_T, Objective::C_step_min, Objective::C_step1,
                      Objective::C_step2})
    CHECK(objective_from_string(to_string(o)) == o);
  CHECK_THROWS_AS(objective_from_string("C_H"), InputError);
  CHECK(engine_from_string("numeric") == Engine::numeric);
}

TEST_CASE("classification") {
  CHECK(classify(1.0, 2.0, 0.5) == Winner::stepwise);
  CHECK(classify(1.0, 2.0, 3.0) == Winner::joint);
  CHECK(classify(1.0, 2.0, 1.5) == Winner::indeterminate);
}

TEST_CASE("strategy comparison") {
  const std::vector<double> grid{0.01, 0.1, 0.5, 1.0, 2.0, 5.0};
  const CaseId co3{ProbeKind::coherent, 3};
  const StrategyComparison one = compare_strategies(Engine::analytic, co3, 1.0, grid, {}, 1);
  const StrategyComparison four = compare_strategies(Engine::analytic, co3, 1.0, grid, {}, 4);
  REQUIRE(one.points.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(one.points[i].gamma == grid[i]);
    CHECK(one.points[i].c_t.value == four.points[i].c_t.value);
    CHECK(one.points[i].c_step1.phi1 == four.points[i].c_step1.phi1);
    CHECK(one.winner_per_point[i] == one.points[i].winner);
    CHECK(one.points[i].c_q.value <= one.points[i].c_t.value);
  }
  CHECK(one.points.front().winner == Winner::stepwise);
  REQUIRE(one.threshold_gamma.has_value());
  for (const auto& p : one.points) {
    if (p.gamma < *one.threshold_gamma) CHECK(p.winner != Winner::joint);
  }
  CHECK_THROWS_AS(compare_strategies(Engine::analytic, co3, 1.0, {0.5, 0.1}), InputError);
  CHECK_THROWS_AS(compare_strategies(Engine::analytic, co3, 1.0, {0.0, 0.1}), InputError);
}

TEST_CASE("large-gamma limits") {
  for (ProbeKind kind : {ProbeKind::squeezed_vacuum, ProbeKind::coherent}) {
    const double limit = limit_bounds_large_gamma(kind, 1.0);
    for (int m : {2, 3}) {
      for (Objective o : {Objective::C_Q, Objective::C_T, Objective::C_step_min}) {
        const PhaseOptimum p = optimize_phase(Engine::analytic, {kind, m}, 1.0, 1e3, o);
        CHECK(p.value == doctest::Approx(limit).epsilon(1e-3));
      }
    }
  }
}
