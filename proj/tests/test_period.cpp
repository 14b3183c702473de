#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/period.hpp"

using namespace nilcat;
using std::numbers::pi;

namespace {

// Composite Simpson in x = sin t over [-pi/2, pi/2].
double simpson_L(const AnnulusParams& p, int n) {
  const double a = -pi / 2, h = pi / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * L_integrand_t(p, a + i * h);
  }
  return acc * h / 3.0;
}

// Riemann (midpoint) sum of the original x-form with the sqrt(1-x^2) factor kept
// explicit, written independently of the library integrand.
double riemann_L(double alpha, double theta, int n) {
  const double C = std::sin(2 * theta) / (2 * alpha), C2 = C * C, c2 = std::cos(2 * theta);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -pi / 2 + (i + 0.5) * pi / n;
    const double x = std::sin(t), x2 = x * x;
    const double P = alpha * alpha + c2 * x2 - C2 * x2 * x2;
    const double s = std::sqrt(P);
    const double dx_over_sqrt = 1.0;  // dx / sqrt(1-x^2) = dt
    acc += (2 * alpha * C2 * x2 - alpha * c2 + C2 * x2 * s) / (s * (alpha + s)) * dx_over_sqrt;
  }
  return acc * pi / n;
}

}  // namespace

TEST_CASE("L sign at theta = 0 and near pi/4") {
  CHECK(L_integral(AnnulusParams::make(1.0, 0.0)).L < 0.0);
  CHECK(L_integral(AnnulusParams::make(1.0, pi / 4 - 1e-6)).L > 0.0);
  CHECK_THROWS_AS(L_integral(AnnulusParams::make(0.5, 0.6)), DomainError);
}

TEST_CASE("L matches a Simpson oracle") {
  const auto p = AnnulusParams::make(2.0, 0.2);
  CHECK(std::abs(L_integral(p).L - simpson_L(p, 1000000)) < 1e-9);
}

TEST_CASE("L1 + L2 split sums to L") {
  for (double alpha : {0.5, 1.0, 3.0}) {
    const auto p = AnnulusParams::make(alpha, 0.4 * theta_plus(alpha));
    const auto r = L_integral(p, 1e-12, true);
    CHECK(std::abs(*r.L1 + *r.L2 - r.L) < 1e-11);
  }
}

TEST_CASE("theta tilde against an independent Riemann-sum bisection") {
  const auto root = find_theta_tilde(1.0);
  double lo = 0.0, hi = pi / 4;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (riemann_L(1.0, mid, 100000) < 0 ? lo : hi) = mid;
  }
  CHECK(std::abs(root.theta - 0.5 * (lo + hi)) < 1e-12);
  CHECK(std::abs(root.L) <= 1e-10);
  CHECK(root.theta > 0.0);
  CHECK(root.theta < pi / 4);
}

TEST_CASE("theta tilde fixtures") {
  struct Fix {
    double alpha, theta;
  };
  // Recorded from the Riemann-sum bisection oracle.
  for (const auto f : {Fix{0.5, 0.38495367935319674}, Fix{2.0, 0.7388682612414312},
                       Fix{5.0, 0.7778996002704959}, Fix{100.0, 0.7853794133974707}}) {
    const auto r = find_theta_tilde(f.alpha);
    INFO(f.alpha);
    CHECK(std::abs(r.theta - f.theta) < 1e-10);
    CHECK(std::abs(r.L) <= 1e-10);
  }
  CHECK(find_theta_tilde(0.5).theta < pi / 6);
}

TEST_CASE("L increases along a theta ladder") {
  for (double alpha : {0.5, 1.0, 10.0}) {
    const auto ladder = L_theta_ladder(alpha, 12);
    for (std::size_t k = 1; k < ladder.size(); ++k) CHECK(ladder[k].second > ladder[k - 1].second);
  }
}

TEST_CASE("appendix decomposition and bounds") {
  for (double alpha : {10.0, 100.0}) {
    const auto th = find_theta_tilde(alpha).theta;
    const auto I = appendix_I_decomposition(alpha, th);
    CHECK(std::abs(*I.I1 - std::cos(2 * th) * *I.I2 + *I.I3) <= 1e-8);
    CHECK(*I.I2 >= I2_lower_bound(alpha));
    CHECK(*I.I1 <= I1_upper_bound(alpha));
    CHECK(*I.I3 <= I3_upper_bound(alpha));
  }
  CHECK(I2_lower_bound(10.0) == doctest::Approx(pi * 100 / (std::sqrt(101.0) * (10 + std::sqrt(101.0)))));
}

TEST_CASE("sweep CSV is deterministic") {
  const double alphas[] = {1.0, 2.0};
  std::ostringstream a, b;
  write_sweep_csv(a, period_sweep(alphas));
  write_sweep_csv(b, period_sweep(alphas));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("alpha,theta_tilde,L_residual,I1,I2,I3\n", 0) == 0);
}
