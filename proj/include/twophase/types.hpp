#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>

namespace twophase {

enum class ProbeKind { coherent, squeezed_vacuum };

/// Pure single-mode probe. `nbar` is the mean photon number; `probe_phase`
/// is the phase of the coherent amplitude (phi_alpha) or of the squeezing
/// parameter (phi_r).
struct ProbeSpec {
  ProbeKind kind = ProbeKind::coherent;
  double nbar = 0.0;
  double probe_phase = 0.0;

  void validate() const;
};

/// One of the four probe x scrambler-order combinations.
struct CaseId {
  ProbeKind probe = ProbeKind::coherent;
  int m = 2;

  void validate() const;
  friend bool operator==(const CaseId&, const CaseId&) = default;
};

/// QFIM `Q` (symmetric) and Uhlmann curvature `D` (antisymmetric) of the
/// two-phase model at one parameter point.
///
/// `q_asymmetry` and `d_asymmetry` record the raw round-off asymmetry seen
/// before symmetrization (zero for closed-form results).
struct InfoMatrices {
  Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d D = Eigen::Matrix2d::Zero();
  double q_asymmetry = 0.0;
  double d_asymmetry = 0.0;

  double q11() const { return Q(0, 0); }
  double q12() const { return Q(0, 1); }
  double q22() const { return Q(1, 1); }
  double d12() const { return D(0, 1); }
  double det_q() const { return Q(0, 0) * Q(1, 1) - Q(0, 1) * Q(1, 0); }

  /// Builds the matrices from the four independent entries.
  static InfoMatrices from_entries(double q11, double q12, double q22, double d12);
};

std::string_view to_string(ProbeKind kind);
ProbeKind probe_kind_from_string(std::string_view name);

/// "coherent_m2", "squeezed_vacuum_m3", ...
std::string to_string(const CaseId& id);

}  // namespace twophase
