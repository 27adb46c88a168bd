#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals. Integrable
// endpoint singularities are handled by bisection, since no node touches an
// endpoint.

#include <functional>

namespace fordsph {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-panel |K15 - G7| estimates
  int panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_panels = 20000;
};

// NumericalError if the error target is not met within max_panels.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

}  // namespace fordsph
