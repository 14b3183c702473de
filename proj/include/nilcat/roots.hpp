#pragma once

#include <functional>

namespace nilcat {

struct RootResult {
  double root = 0.0;
  double value = 0.0;  // f(root)
  int iterations = 0;
};

// Bisection on a sign-changing bracket. Runs until the bracket is narrower than x_tol
// or cannot be split further in double precision. Throws SolverError when f(lo) and
// f(hi) do not have opposite signs.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 0.0, int max_iter = 400);

// Brent's method (inverse quadratic interpolation with bisection fallback).
RootResult brent(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 1e-15, int max_iter = 200);

// Golden-section minimisation of f on [lo, hi].
double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double x_tol = 1e-12);

}  // namespace nilcat
