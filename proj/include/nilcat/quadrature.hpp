#pragma once

#include <functional>

namespace nilcat {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

// One 15-point Gauss-Kronrod panel on [a, b]; the error estimate is |K15 - G7|.
QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive Gauss-Kronrod (QAG-style bisection of the worst panel) until the
// summed error estimate drops below max(abs_tol, rel_tol*|I|) or max_intervals is hit.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol = 0.0,
                                    int max_intervals = 2000);

}  // namespace nilcat
