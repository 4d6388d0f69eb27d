#pragma once

// Closed-form QFIM / Uhlmann curvature for the four probe x scrambler
// cases, the quadratic-scrambling sloppiness formulas and the small/large
// gamma expansions.
//
// All functions take the probe-relative phase theta (see relative_phase()
// in model.hpp) with r = asinh(sqrt(nbar)) or alpha = sqrt(nbar).

#include "twophase/errors.hpp"
#include "twophase/types.hpp"

#include <cmath>

namespace twophase {

template <typename Real>
struct AnalyticEntries {
  Real q11, q12, q22, d12;
};

namespace detail {

template <typename Real>
AnalyticEntries<Real> squeezed_cubic(Real r, Real g, Real p) {
  using std::cos, std::cosh, std::sin, std::sinh;
  const Real g2 = g * g;
  const Real s2r = sinh(2 * r);
  const Real q11 = 8 * cosh(r) * cosh(r) * sinh(r) * sinh(r);
  const Real ch4 = cosh(r) * cosh(r) * cosh(r) * cosh(r);
  const Real sh4 = sinh(r) * sinh(r) * sinh(r) * sinh(r);
  const Real bracket =
      5 * cosh(2 * r) + 51 * cosh(6 * r) +
      108 * g2 * (20 * cosh(4 * r) + 35 * cosh(8 * r) + 128 * cos(4 * p) * ch4 * sh4) - 41 * cos(p) * s2r -
      3 * cos(p) * (37 * cosh(4 * r) + 576 * g2 * (9 * cosh(2 * r) + 7 * cosh(6 * r))) * s2r +
      12 * cos(2 * p) * (-cosh(2 * r) + 144 * g2 * (5 + 7 * cosh(4 * r))) * s2r * s2r +
      6 * cos(3 * p) * (5 - 1152 * g2 * cosh(2 * r)) * s2r * s2r * s2r;
  const Real q22 = Real(0.5) * (2 * (-1 + 4374 * g2 * g2 + cosh(4 * r)) + 9 * g2 * bracket);
  const Real q12 = 2 * s2r * (s2r + 27 * g2 * (-4 * cos(p) * cosh(4 * r) + (3 + cos(2 * p)) * sinh(4 * r)));
  const Real d12 = 216 * g2 * sin(p) * s2r * (cosh(2 * r) - cos(p) * s2r);
  return {q11, q12, q22, d12};
}

template <typename Real>
AnalyticEntries<Real> squeezed_quadratic(Real r, Real g, Real p) {
  using std::cos, std::cosh, std::sin, std::sinh;
  const Real g2 = g * g;
  const Real s2r = sinh(2 * r);
  const Real q11 = 8 * cosh(r) * cosh(r) * sinh(r) * sinh(r);
  const Real q22 = 4 * (Real(-0.25) + 2 * g2 + 8 * g2 * g2 + (Real(0.25) + 6 * g2 + 24 * g2 * g2) * cosh(4 * r) +
                        4 * g2 * ((-1 + 4 * g2) * cos(2 * p) - 4 * g * sin(2 * p)) * s2r * s2r -
                        2 * g * (1 + 8 * g2) * (2 * g * cos(p) - sin(p)) * sinh(4 * r));
  const Real q12 = 2 * s2r * (4 * g * cosh(2 * r) * (-2 * g * cos(p) + sin(p)) + (1 + 8 * g2) * s2r);
  const Real d12 = 8 * g * (cos(p) + 2 * g * sin(p)) * s2r;
  return {q11, q12, q22, d12};
}

template <typename Real>
AnalyticEntries<Real> coherent_cubic(Real a, Real g, Real p) {
  using std::cos, std::sin;
  const Real a2 = a * a, a3 = a2 * a, a4 = a2 * a2, a5 = a4 * a, a6 = a4 * a2;
  const Real g2 = g * g, g3 = g2 * g, g4 = g2 * g2;
  const Real q11 = 4 * a2;
  const Real q12 = 4 * (a2 - 3 * g * (3 * a3 * sin(3 * p) + (3 * a3 + a) * sin(p)) +
                        9 * g2 * (4 * a4 * cos(4 * p) + (16 * a4 + 12 * a2) * cos(2 * p) + 12 * a4 + 12 * a2));
  const Real q22 =
      4 * (a2 - 3 * g * (6 * a3 * sin(3 * p) + (6 * a3 + 2 * a) * sin(p)) +
           9 * g2 * (2 * a4 * cos(4 * p) + (40 * a4 + 40 * a2) * cos(2 * p) + 38 * a4 + 48 * a2 + 7) -
           27 * g3 *
               (32 * a5 * sin(5 * p) + (96 * a5 + 144 * a3) * sin(3 * p) + (64 * a5 + 144 * a3 + 48 * a) * sin(p)) +
           81 * g4 *
               (32 * a6 * cos(6 * p) + (192 * a6 + 336 * a4) * cos(4 * p) +
                (480 * a6 + 1344 * a4 + 768 * a2) * cos(2 * p) + 320 * a6 + 1008 * a4 + 768 * a2 + 96));
  const Real d12 = -4 * (3 * g * (3 * a3 * cos(3 * p) + (a3 + a) * cos(p)) +
                         9 * g2 * (4 * a4 * sin(4 * p) + (8 * a4 + 12 * a2) * sin(2 * p)));
  return {q11, q12, q22, d12};
}

template <typename Real>
AnalyticEntries<Real> coherent_quadratic(Real a, Real g, Real p) {
  using std::cos, std::sin;
  const Real a2 = a * a;
  const Real g2 = g * g;
  const Real q11 = 4 * a2;
  const Real q12 = 4 * (a2 - 4 * g * a2 * sin(2 * p) + 8 * g2 * (a2 * cos(2 * p) + a2));
  const Real q22 = 4 * (a2 - 8 * g * a2 * sin(2 * p) + 8 * g2 * (2 * a2 * cos(2 * p) + 4 * a2 + 1) -
                        16 * g2 * g * (4 * a2 * sin(2 * p)) + 16 * g2 * g2 * (8 * a2 * cos(2 * p) + 8 * a2 + 2));
  const Real d12 = -16 * a2 * g * (cos(2 * p) + 2 * g * sin(2 * p));
  return {q11, q12, q22, d12};
}

}  // namespace detail

/// Q11, Q12, Q22, D12 for `id` at (nbar, gamma, theta).
template <typename Real>
AnalyticEntries<Real> analytic_entries(const CaseId& id, Real nbar, Real gamma, Real theta) {
  id.validate();
  if (!(nbar >= Real(0))) throw InputError("nbar must be >= 0");
  if (id.probe == ProbeKind::squeezed_vacuum) {
    const Real r = std::asinh(std::sqrt(nbar));
    return id.m == 3 ? detail::squeezed_cubic(r, gamma, theta) : detail::squeezed_quadratic(r, gamma, theta);
  }
  const Real a = std::sqrt(nbar);
  return id.m == 3 ? detail::coherent_cubic(a, gamma, theta) : detail::coherent_quadratic(a, gamma, theta);
}

InfoMatrices analytic_info(const CaseId& id, double nbar, double gamma, double theta);

/// Closed-form sloppiness for quadratic scrambling; +inf at gamma = 0 or
/// wherever the phase factor vanishes.
double sloppiness_closed_quadratic(ProbeKind kind, double nbar, double gamma, double theta);

/// Relative phase minimizing the quadratic-scrambling sloppiness:
/// arctan(2 gamma) for squeezed vacuum; for coherent probes
/// (1/4) arctan(4 gamma / (1 - 4 gamma^2)) continued through gamma = 1/2
/// so that it stays continuous in [0, pi/4].
double optimal_phase_quadratic(ProbeKind kind, double gamma);

/// Coefficient functions of the sloppiness expansions, together with the
/// numeric prefactors they enter with:
///   small gamma: S = 1 / (small_prefactor * f * gamma^2) - g
///   large gamma: S = 1 / (large_prefactor * kappa * gamma^4)
struct AsymptoticCoefficients {
  double f = 0.0;
  double g = 0.0;
  double kappa = 0.0;
  double small_prefactor = 0.0;
  double large_prefactor = 0.0;
};

AsymptoticCoefficients asymptotic_coefficients(const CaseId& id, double nbar);

double sloppiness_series_small_gamma(const CaseId& id, double nbar, double gamma);
double sloppiness_series_large_gamma(const CaseId& id, double nbar, double gamma);

/// Common large-gamma limit of C_Q, C_T and both stepwise bounds:
/// 1/(8 nbar (1 + nbar)) for squeezed vacuum, 1/(4 nbar) for coherent.
/// +inf at nbar = 0.
double limit_bounds_large_gamma(ProbeKind kind, double nbar);

}  // namespace twophase
