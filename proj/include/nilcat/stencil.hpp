#pragma once

#include <cmath>
#include <type_traits>

namespace nilcat::stencil {

// Fourth-order central differences. F may return any type supporting
// subtraction and scaling by double (double, std::complex, Eigen vectors).

// Results are materialised as the value type of f so that expression-template types
// (Eigen) never outlive their operands.
template <class F>
auto d1(F&& f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  return R((f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) * (1.0 / (12.0 * h)));
}

template <class F>
auto d2(F&& f, double x, double h) {
  using R = std::decay_t<decltype(f(x))>;
  return R((-1.0 * f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
            f(x + 2 * h)) *
           (1.0 / (12.0 * h * h)));
}

// Mixed derivative d^2 f / (du dv) as the tensor product of two d1 stencils.
template <class F>
auto d11(F&& f, double u, double v, double h) {
  return d1([&](double s) { return d1([&](double t) { return f(s, t); }, v, h); }, u, h);
}

// Default step for surface samplers: 1e-4 scaled by the parameter magnitude.
inline double surface_step(double u, double v) {
  return 1e-4 * std::fmax(1.0, std::fmax(std::fabs(u), std::fabs(v)));
}

}  // namespace nilcat::stencil
