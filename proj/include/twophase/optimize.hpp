#pragma once

#include <cmath>
#include <functional>

namespace twophase {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket is narrower than `tol`. Returns the best point evaluated.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol);

struct PeriodicSearch {
  int coarse_points = 512;
  double tolerance = 1e-8;
  /// Refined minima within this relative distance of the best are treated
  /// as ties and resolved toward the smallest abscissa.
  double tie_rtol = 1e-10;
  /// Coarse local minima this close (relative) to the best coarse value are
  /// all refined.
  double candidate_rtol = 1e-3;
};

/// Minimizes a 2 pi-periodic function: uniform coarse scan of [0, 2 pi)
/// followed by golden-section refinement of the promising brackets.
/// Non-finite values count as +inf. Returns value = +inf when no finite
/// value was seen; the abscissa is reduced to [0, 2 pi).
ScalarMinimum minimize_periodic(const std::function<double(double)>& f, const PeriodicSearch& opts = {});

}  // namespace twophase
