#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "nilcat/errors.hpp"

namespace nilcat {

template <std::size_t N>
typename DormandPrince45<N>::State DormandPrince45<N>::integrate(double t0, double t1, State y) {
  // Butcher tableau
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = t1 - t0;
  if (span == 0.0) return y;
  const double dir = span > 0 ? 1.0 : -1.0;
  double t = t0;
  double h = h_ != 0.0 ? std::min(std::abs(h_), std::abs(span)) : std::abs(span) * 1e-2;
  const double h_min = 1e-14 * std::max(1.0, std::abs(span));

  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                 double hh) {
    State out = base;
    for (const auto& [w, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) out[i] += hh * w * (*k)[i];
    }
    return out;
  };

  State k1 = rhs_(t, y);
  while (dir * (t1 - t) > 0.0) {
    const bool last = h >= std::abs(t1 - t);
    if (last) h = std::abs(t1 - t);
    const double hs = dir * h;
    const State k2 = rhs_(t + c2 * hs, axpy(y, {{a21, &k1}}, hs));
    const State k3 = rhs_(t + c3 * hs, axpy(y, {{a31, &k1}, {a32, &k2}}, hs));
    const State k4 = rhs_(t + c4 * hs, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, hs));
    const State k5 =
        rhs_(t + c5 * hs, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, hs));
    const State k6 = rhs_(
        t + hs, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, hs));
    const State y_new =
        axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, hs);
    const double t_new = last ? t1 : t + hs;
    const State k7 = rhs_(t_new, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double scale = abs_tol_ + rel_tol_ * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }

    if (err <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;  // FSAL
      ++accepted_;
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      if (!last) h *= grow;
      else h_ = h * grow;
    } else {
      ++rejected_;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < h_min) {
        throw SolverError("DormandPrince45: step size underflow at t=" + std::to_string(t) +
                          "; tolerance too small for double precision");
      }
    }
  }
  return y;
}

}  // namespace nilcat
