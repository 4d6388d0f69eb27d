#include "twophase/analytic.hpp"

#include <cmath>
#include <limits>

namespace twophase {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

InfoMatrices analytic_info(const CaseId& id, double nbar, double gamma, double theta) {
  const auto e = analytic_entries<double>(id, nbar, gamma, theta);
  return InfoMatrices::from_entries(e.q11, e.q12, e.q22, e.d12);
}

double sloppiness_closed_quadratic(ProbeKind kind, double nbar, double gamma, double theta) {
  if (gamma == 0.0 || nbar == 0.0) return kInf;
  double denom;
  if (kind == ProbeKind::squeezed_vacuum) {
    const double c = std::cos(theta) + 2.0 * gamma * std::sin(theta);
    denom = 256.0 * gamma * gamma * nbar * (1.0 + nbar) * c * c;
  } else {
    const double g2 = gamma * gamma;
    denom = 128.0 * g2 * nbar *
            ((1.0 + nbar) * (1.0 + 4.0 * g2) +
             nbar * ((1.0 - 4.0 * g2) * std::cos(4.0 * theta) + 4.0 * gamma * std::sin(4.0 * theta)));
  }
  return denom > 0.0 ? 1.0 / denom : kInf;
}

double optimal_phase_quadratic(ProbeKind kind, double gamma) {
  if (!(gamma > 0.0)) throw InputError("optimal phase needs gamma > 0");
  if (kind == ProbeKind::squeezed_vacuum) return std::atan(2.0 * gamma);
  // atan2 keeps the quarter angle on the continuous branch through 4 gamma^2 = 1.
  return 0.25 * std::atan2(4.0 * gamma, 1.0 - 4.0 * gamma * gamma);
}

AsymptoticCoefficients asymptotic_coefficients(const CaseId& id, double nbar) {
  id.validate();
  const double n = nbar;
  AsymptoticCoefficients c;
  if (id.m == 3) {
    if (id.probe == ProbeKind::squeezed_vacuum) {
      const double w = 7.0 + 60.0 * n * (1.0 + n);
      const double s = n * (1.0 + n);
      c.f = s * (1.0 + 2.0 * n) * w;
      c.g = 3.0 * (1.0 + n + n * n) / (s * w * w);
      c.kappa = s * (1.0 + 8.0 * std::sqrt(s) + 80.0 * std::sqrt(n * n * n * (1.0 + n)) +
                     192.0 * std::sqrt(std::pow(n, 5) * (1.0 + n)) + 128.0 * std::sqrt(std::pow(n, 7) * (1.0 + n)) +
                     32.0 * s * (1.0 + 2.0 * n) * (1.0 + 2.0 * n));
      c.small_prefactor = 288.0;
      c.large_prefactor = 62208.0;
    } else {
      const double w = 7.0 + 8.0 * n * (5.0 + 2.0 * n);
      c.f = n * w;
      c.g = 6.0 * (1.0 + 2.0 * n * (5.0 + 6.0 * n)) / (n * w * w);
      c.kappa = n * (1.0 + 2.0 * n * (5.0 + 6.0 * n));
      c.small_prefactor = 144.0;
      c.large_prefactor = 124416.0;
    }
  } else if (id.probe == ProbeKind::squeezed_vacuum) {
    c.f = n * (1.0 + n);
    c.g = 1.0 / (64.0 * n * (1.0 + n));
    c.kappa = n * (1.0 + n);
    c.small_prefactor = 256.0;
    c.large_prefactor = 1024.0;
  } else {
    c.f = n * (1.0 + 2.0 * n);
    c.g = 1.0 / (32.0 * n * (1.0 + 2.0 * n));
    c.kappa = n;
    c.small_prefactor = 128.0;
    c.large_prefactor = 512.0;
  }
  return c;
}

double sloppiness_series_small_gamma(const CaseId& id, double nbar, double gamma) {
  const auto c = asymptotic_coefficients(id, nbar);
  return 1.0 / (c.small_prefactor * c.f * gamma * gamma) - c.g;
}

double sloppiness_series_large_gamma(const CaseId& id, double nbar, double gamma) {
  const auto c = asymptotic_coefficients(id, nbar);
  const double g2 = gamma * gamma;
  return 1.0 / (c.large_prefactor * c.kappa * g2 * g2);
}

double limit_bounds_large_gamma(ProbeKind kind, double nbar) {
  if (!(nbar > 0.0)) return kInf;
  return kind == ProbeKind::squeezed_vacuum ? 1.0 / (8.0 * nbar * (1.0 + nbar)) : 1.0 / (4.0 * nbar);
}

}  // namespace twophase
