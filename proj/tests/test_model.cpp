#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twophase/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace twophase;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel_norm(const ComplexVector<double>& a, const ComplexVector<double>& b) {
  return (a - b).norm() / std::max(a.norm(), b.norm());
}

}  // namespace

TEST_CASE("two independent evaluation paths agree") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int draws = 0;
  double worst = 0.0;
  for (; draws < 120; ++draws) {
    const ProbeSpec probe{unit(rng) < 0.5 ? ProbeKind::coherent : ProbeKind::squeezed_vacuum, 0.2 + 1.8 * unit(rng),
                          kTwoPi * unit(rng)};
    const ScramblerConfig scr{unit(rng) < 0.5 ? 2 : 3, 0.01 + 1.99 * unit(rng)};
    const PhasePair ph{kTwoPi * unit(rng), kTwoPi * unit(rng)};
    const InfoMatrices gram = info_matrices(evolve(probe, ph, scr));
    const InfoMatrices gen = info_matrices_via_generators(probe, ph, scr);
    worst = std::max(worst, max_relative_deviation(gram, gen));
  }
  CHECK(draws >= 100);
  CHECK(worst < 1e-8);
}

TEST_CASE("output-frame propagation matches the Heisenberg route where it converges") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 12; ++i) {
    const int m = i % 2 ? 3 : 2;
    const ProbeSpec probe{i % 4 < 2 ? ProbeKind::coherent : ProbeKind::squeezed_vacuum, 0.3 + 0.7 * unit(rng), 0.0};
    const ScramblerConfig scr{m, (m == 2 ? 0.4 : 0.08) * unit(rng) + 0.01};
    const PhasePair ph{kTwoPi * unit(rng), kTwoPi * unit(rng)};
    const InfoMatrices h = info_matrices(evolve(probe, ph, scr, {}, Propagation::heisenberg));
    const InfoMatrices e = info_matrices(evolve(probe, ph, scr, {}, Propagation::eigen));
    CHECK(max_relative_deviation(h, e) < 1e-8);
  }
}

TEST_CASE("exact derivative states match central differences") {
  const ProbeSpec probe{ProbeKind::squeezed_vacuum, 0.8, 0.0};
  const ScramblerConfig scr{2, 0.3};
  const PhasePair ph{0.6, 1.3};
  const double h = 1e-5;
  const std::size_t dim = 256;
  const ModelState s = evolve_at_dim(probe, ph, scr, dim, Propagation::eigen);
  CHECK(s.provenance.frame == Frame::output);
  CHECK(s.provenance.dim == dim);
  const auto plus1 = evolve_at_dim(probe, {ph.phi1 + h, ph.phi2}, scr, dim, Propagation::eigen).psi.amplitudes;
  const auto minus1 = evolve_at_dim(probe, {ph.phi1 - h, ph.phi2}, scr, dim, Propagation::eigen).psi.amplitudes;
  const auto plus2 = evolve_at_dim(probe, {ph.phi1, ph.phi2 + h}, scr, dim, Propagation::eigen).psi.amplitudes;
  const auto minus2 = evolve_at_dim(probe, {ph.phi1, ph.phi2 - h}, scr, dim, Propagation::eigen).psi.amplitudes;
  CHECK(rel_norm(s.dpsi1.amplitudes, (plus1 - minus1) / (2 * h)) < 1e-6);
  CHECK(rel_norm(s.dpsi2.amplitudes, (plus2 - minus2) / (2 * h)) < 1e-6);
}

TEST_CASE("structure of the information matrices") {
  SUBCASE("Q11 depends on the probe only") {
    for (double gamma : {0.0, 0.3, 1.7}) {
      for (int m : {2, 3}) {
        const double theta = 0.9;
        CHECK(numeric_info({ProbeKind::squeezed_vacuum, m}, 1.0, gamma, theta).q11() ==
              doctest::Approx(16.0).epsilon(1e-9));
        CHECK(numeric_info({ProbeKind::coherent, m}, 1.0, gamma, theta).q11() == doctest::Approx(4.0).epsilon(1e-9));
      }
    }
  }
  SUBCASE("no dependence on phi2") {
    CHECK_NOTHROW(phi2_independence_check({ProbeKind::coherent, 1.0, 0.0}, {2, 0.4}, 0.3));
    CHECK_NOTHROW(phi2_independence_check({ProbeKind::squeezed_vacuum, 0.5, 0.2}, {3, 0.05}, 1.1));
    CHECK_NOTHROW(phi2_independence_check({ProbeKind::coherent, 1.0, 0.0}, {3, 1.5}, 0.3, {},
                                          Propagation::heisenberg));
  }
  SUBCASE("symmetry and round-off asymmetry record") {
    const InfoMatrices q = info_matrices(evolve({ProbeKind::coherent, 1.5, 0.0}, {0.4, 0.0}, {3, 0.7}));
    CHECK(q.Q(0, 1) == q.Q(1, 0));
    CHECK(q.D(0, 1) == -q.D(1, 0));
    CHECK(q.D(0, 0) == 0.0);
    CHECK(q.q_asymmetry < 1e-10 * q.Q.norm());
  }
  SUBCASE("degeneracy") {
    for (ProbeKind kind : {ProbeKind::coherent, ProbeKind::squeezed_vacuum}) {
      const InfoMatrices weak = numeric_info({kind, 2}, 1.0, 1e-4, 0.5);
      CHECK(weak.det_q() < 1e-6 * weak.q11() * weak.q11());
    }
    // Cubic scrambling: det Q vanishes as gamma^2, but at gamma = 1e-4 the
    // coherent probe still sits above 1e-6 Q11^2.
    const InfoMatrices a = numeric_info({ProbeKind::coherent, 3}, 1.0, 1e-4, 0.5);
    const InfoMatrices b = numeric_info({ProbeKind::coherent, 3}, 1.0, 1e-5, 0.5);
    CHECK(a.det_q() / b.det_q() == doctest::Approx(100.0).epsilon(1e-3));
    CHECK(a.det_q() > 1e-6 * a.q11() * a.q11());
    const InfoMatrices none = numeric_info({ProbeKind::squeezed_vacuum, 2}, 1.0, 0.0, 0.5);
    CHECK(std::abs(none.det_q()) < 1e-10 * none.q11() * none.q22());
  }
}

TEST_CASE("phase conventions") {
  for (double theta : {0.0, 0.5, 2.0}) {
    CHECK(relative_phase(ProbeKind::coherent, encoder_phase(ProbeKind::coherent, theta)) ==
          doctest::Approx(theta));
    CHECK(relative_phase(ProbeKind::squeezed_vacuum, encoder_phase(ProbeKind::squeezed_vacuum, theta)) ==
          doctest::Approx(theta));
  }
  // Rotating the probe and the encoder together leaves the matrices unchanged.
  const ScramblerConfig scr{2, 0.5};
  const InfoMatrices a = info_matrices(evolve({ProbeKind::coherent, 1.0, 0.7}, {0.2, 0.0}, scr));
  const InfoMatrices b = info_matrices(evolve({ProbeKind::coherent, 1.0, 0.0}, {-0.5, 0.0}, scr));
  CHECK(max_relative_deviation(a, b) < 1e-10);
}

TEST_CASE("truncation failures and invalid input") {
  TruncationPolicy tight;
  tight.initial_dim = 16;
  tight.max_dim = 16;
  try {
    evolve({ProbeKind::coherent, 8.0, 0.0}, {0.0, 0.0}, {2, 0.5}, tight);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK(e.required_dim() > 16);
  }
  TruncationPolicy small;
  small.initial_dim = 32;
  small.max_dim = 64;
  try {
    evolve({ProbeKind::coherent, 1.0, 0.0}, {0.0, 0.0}, {3, 1.0}, small, Propagation::eigen);
    FAIL("expected a truncation error");
  } catch (const TruncationError& e) {
    CHECK_FALSE(e.scalar().empty());
  }
  CHECK_THROWS_AS(evolve({ProbeKind::coherent, 1.0, 0.0}, {0.0, 0.0}, {4, 0.5}), InputError);
  CHECK_THROWS_AS(evolve({ProbeKind::coherent, 1.0, 0.0}, {0.0, 0.0}, {2, -0.5}), InputError);
  CHECK_THROWS_AS(evolve({ProbeKind::coherent, 1.0, 0.0}, {NAN, 0.0}, {2, 0.5}), InputError);
}
