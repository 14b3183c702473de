#include "nilcat/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace nilcat {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  QuadratureResult r;
  r.value = kronrod * half;
  r.error_estimate = std::abs((kronrod - gauss) * half);
  r.intervals = 1;
  r.converged = true;
  return r;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, int max_intervals) {
  std::priority_queue<Panel> panels;
  const auto first = gauss_kronrod_15(f, a, b);
  panels.push({a, b, first.value, first.error_estimate});
  double total = first.value;
  double total_err = first.error_estimate;
  int count = 1;

  auto target = [&] { return std::fmax(abs_tol, rel_tol * std::abs(total)); };
  while (total_err > target() && count < max_intervals) {
    const Panel worst = panels.top();
    // Stop splitting once panels collapse to rounding level.
    if (std::abs(worst.b - worst.a) < 1e-14 * std::fmax(1.0, std::abs(b - a))) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = gauss_kronrod_15(f, worst.a, mid);
    const auto right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error_estimate + right.error_estimate - worst.error;
    panels.push({worst.a, mid, left.value, left.error_estimate});
    panels.push({mid, worst.b, right.value, right.error_estimate});
    ++count;
  }

  // Re-sum from the panels to drop accumulated update round-off.
  double value = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  QuadratureResult r;
  r.value = value;
  r.error_estimate = err;
  r.intervals = count;
  r.converged = err <= std::fmax(abs_tol, rel_tol * std::abs(value));
  return r;
}

}  // namespace nilcat
