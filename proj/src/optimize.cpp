#include "twophase/optimize.hpp"

#include "twophase/errors.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <vector>

namespace twophase {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

double wrap(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(x, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi > lo)) throw InputError("golden-section bracket must have hi > lo");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = finite_or_inf(f(c));
  double fd = finite_or_inf(f(d));
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = finite_or_inf(f(c));
      if (fc < best.value || (fc == best.value && c < best.x)) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = finite_or_inf(f(d));
      if (fd < best.value) best = {d, fd};
    }
  }
  return best;
}

ScalarMinimum minimize_periodic(const std::function<double(double)>& f, const PeriodicSearch& opts) {
  const int n = opts.coarse_points;
  if (n < 3) throw InputError("periodic search needs at least 3 coarse points");
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<double> values(n);
  for (int k = 0; k < n; ++k) values[k] = finite_or_inf(f(k * step));

  const double coarse_best = *std::min_element(values.begin(), values.end());
  if (!std::isfinite(coarse_best)) return {0.0, kInf};

  std::vector<ScalarMinimum> refined;
  for (int k = 0; k < n; ++k) {
    const double v = values[k];
    const double left = values[(k + n - 1) % n];
    const double right = values[(k + 1) % n];
    if (!(v <= left && v <= right)) continue;
    if (v > coarse_best + opts.candidate_rtol * std::abs(coarse_best)) continue;
    ScalarMinimum m = golden_section_minimize(f, (k - 1) * step, (k + 1) * step, opts.tolerance);
    if (v < m.value) m = {k * step, v};
    refined.push_back({wrap(m.x), m.value});
  }

  ScalarMinimum best = refined.front();
  for (const auto& m : refined) {
    if (m.value < best.value) best = m;
  }
  const double tie = opts.tie_rtol * std::abs(best.value);
  ScalarMinimum chosen = best;
  for (const auto& m : refined) {
    if (m.value <= best.value + tie && m.x < chosen.x) chosen = m;
  }
  return chosen;
}

}  // namespace twophase
