#pragma once

// Two-phase statistical model |psi> = V(phi2) U(gamma) V(phi1) |psi0> with
// V(phi) = exp(-i phi n) and U(gamma) = exp(-i gamma x^m), and its numeric
// QFIM / Uhlmann curvature.

#include "twophase/fock.hpp"
#include "twophase/types.hpp"

#include <array>
#include <cstddef>
#include <string>

namespace twophase {

struct ScramblerConfig {
  int m = 2;
  double gamma = 0.0;

  void validate() const;
};

struct PhasePair {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// How the scrambler is handled numerically.
///
/// `heisenberg`: U^dagger a U = a - i m gamma x^{m-1} is applied exactly to
/// the probe, and the model vectors are stored pulled back by (V2 U)^dagger.
/// Every inner product in the QFIM is unchanged by that unitary, so the
/// result is exact up to probe truncation at any gamma.
///
/// `eigen`: the output state is propagated with the eigendecomposed
/// truncated scrambler. Fock-space spreading makes this impractical for
/// cubic scrambling beyond gamma ~ 0.3.
enum class Propagation { heisenberg, eigen };

/// Frame in which a ModelState's vectors are expressed.
enum class Frame {
  output,  ///< psi is the physical output state
  input,   ///< vectors multiplied by (V(phi2) U)^dagger
};

struct ModelProvenance {
  ProbeSpec probe;
  ScramblerConfig scrambler;
  PhasePair phases;
  std::size_t dim = 0;
  Propagation propagation = Propagation::heisenberg;
  Frame frame = Frame::input;
};

/// Output state and its exact (generator-inserted) phase derivatives.
struct ModelState {
  FockVector<double> psi;
  FockVector<double> dpsi1;
  FockVector<double> dpsi2;
  ModelProvenance provenance;
};

/// Builds the model at one fixed truncation (the probe is truncated to
/// `dim`; with `eigen` propagation the scrambler is too).
ModelState evolve_at_dim(const ProbeSpec& probe, const PhasePair& phases, const ScramblerConfig& scr,
                         std::size_t dim, Propagation propagation = Propagation::heisenberg,
                         double tail_tolerance = 1e-12);

/// Builds the model at a dimension certified by `policy`: the dimension is
/// multiplied by `growth_factor` until det Q, Q22 and D12 each change by less
/// than `convergence_rtol`. Throws TruncationError naming the scalar that
/// was still moving when `max_dim` is reached.
ModelState evolve(const ProbeSpec& probe, const PhasePair& phases, const ScramblerConfig& scr,
                  const TruncationPolicy& policy = {}, Propagation propagation = Propagation::heisenberg);

/// Gram-matrix form: Q = 4 Re G, D = 4 Im G with
/// G_{mu nu} = <d_mu psi|d_nu psi> - <d_mu psi|psi><psi|d_nu psi>.
InfoMatrices info_matrices(const ModelState& state);

/// Expectation-value form: Q and D assembled from <n>, <n^2>, <U^dag n U>,
/// <U^dag n^2 U>, <n U^dag n U> in the phase-shifted probe, with the
/// conjugated number operator built as an explicit matrix. Shares no code
/// with evolve()/info_matrices() beyond the Fock primitives.
InfoMatrices info_matrices_via_generators(const ProbeSpec& probe, const PhasePair& phases,
                                          const ScramblerConfig& scr, const TruncationPolicy& policy = {});

struct Phi2Report {
  std::array<double, 3> phi2_values{0.0, 0.7, 2.1};
  double max_deviation = 0.0;
};

/// Evaluates the information matrices at three values of phi2 and throws
/// ModelStructureError if any entry moves by more than 1e-8 (relative).
Phi2Report phi2_independence_check(const ProbeSpec& probe, const ScramblerConfig& scr, double phi1,
                                   const TruncationPolicy& policy = {},
                                   Propagation propagation = Propagation::eigen);

// The closed forms are functions of one probe-relative phase theta. For a
// probe with phase phi_p and first-encoder angle phi1:
//   coherent: theta = phi_p - phi1        squeezed vacuum: theta = phi_p - 2 phi1
// (V(phi1) rotates alpha by e^{-i phi1} and xi by e^{-2 i phi1}).
double relative_phase(ProbeKind kind, double phi1, double probe_phase = 0.0);

/// Encoder angle phi1 that realizes relative phase `theta` for a probe with
/// phase zero.
double encoder_phase(ProbeKind kind, double theta);

/// Numeric information matrices at relative phase `theta` (probe phase 0,
/// phi2 = 0). `dim_used` receives the certified truncation when non-null.
InfoMatrices numeric_info(const CaseId& id, double nbar, double gamma, double theta,
                          const TruncationPolicy& policy = {},
                          Propagation propagation = Propagation::heisenberg,
                          std::size_t* dim_used = nullptr);

/// max over the four entries (Q11, Q12, Q22, D12) of |a - b| / max(|a|, |b|),
/// with the denominator floored at 1e-12 * max|Q| so exact zeros compare
/// sensibly.
double max_relative_deviation(const InfoMatrices& a, const InfoMatrices& b);

}  // namespace twophase
