#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nilcat/errors.hpp"
#include "nilcat/profile.hpp"

using namespace nilcat;
using std::numbers::pi;

namespace {

// Composite Simpson on [0, pi] of 1/sqrt(P(cos psi)).
double simpson_half_period(const AnnulusParams& p, int n) {
  const double h = pi / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w / std::sqrt(p.quartic(std::cos(i * h)));
  }
  return acc * h / 3.0;
}

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("theta_plus branches") {
  CHECK(theta_plus(2.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(theta_plus(1.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(theta_plus(1.0 / std::sqrt(2.0)) == doctest::Approx(pi / 4).epsilon(1e-12));
  CHECK(std::abs(theta_plus(1.0 - 1e-9) - theta_plus(1.0)) < 1e-4);
  CHECK_THROWS_AS(theta_plus(0.0), DomainError);
  CHECK_THROWS_AS(theta_plus(-1.0), DomainError);
}

TEST_CASE("AnnulusParams invariants") {
  const auto p = AnnulusParams::make(1.0, pi / 6);
  CHECK(p.C == std::sin(pi / 3) / 2.0);
  REQUIRE(p.rho_minus);
  REQUIRE(p.rho_plus);
  const double C2 = p.C * p.C;
  CHECK(std::abs(C2 * *p.rho_minus * *p.rho_plus - 1.0) < 1e-12);
  CHECK(std::abs(C2 * (*p.rho_minus - *p.rho_plus) - p.cos2t()) < 1e-12);
  // factored form C^2 (rho- - x^2)(rho+ + x^2)
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const double factored = C2 * (*p.rho_minus - x * x) * (*p.rho_plus + x * x);
    CHECK(std::abs(p.quartic(x) - factored) < 1e-13);
  }
  CHECK(std::abs(p.quartic(1.0) - (1 + std::cos(pi / 3) - std::pow(std::sin(pi / 3), 2) / 4)) <
        1e-15);
  CHECK(quartic_P(AnnulusParams::make(3.0, 0.0), 0.5) == 9.25);
  CHECK(!AnnulusParams::make(1.0, 0.0).rho_minus);
  CHECK(AnnulusParams::make(0.5, 0.5).in_omega == (0.5 < pi / 6));
  CHECK(!AnnulusParams::make(0.5, 0.6).in_omega);
}

TEST_CASE("solve_profile rejects parameters outside Omega") {
  CHECK_THROWS_AS(solve_profile(AnnulusParams::make(0.5, 0.6)), DomainError);
}

TEST_CASE("half period matches Simpson oracle") {
  const auto p = AnnulusParams::make(2.0, 0.3);
  const auto prof = solve_profile(p);
  CHECK(std::abs(prof.U() - simpson_half_period(p, 1000000)) < 1e-10);
}

TEST_CASE("theta = 0 profile has vanishing beta") {
  const auto prof = solve_profile(AnnulusParams::make(1.0, 0.0));
  for (double u : {-3.0, 0.4, 2.5, 7.1}) {
    const auto s = prof.eval(u);
    CHECK(s.beta == 0.0);
    CHECK(s.dG < 0.0);
  }
}

TEST_CASE("initial values and quasi-periodic evaluation") {
  const auto p = AnnulusParams::make(1.0, 0.6157824788316721);
  const auto prof = solve_profile(p);
  const auto s0 = prof.eval(0.0);
  CHECK(s0.phi == 0.0);
  CHECK(s0.beta == 0.0);
  CHECK(s0.G == 0.0);
  CHECK(std::abs(s0.dphi + std::sqrt(1.0 + p.cos2t() - p.C * p.C)) < 1e-15);
  CHECK(std::abs(prof.V() + prof.betaU() / p.alpha) == 0.0);

  const auto g = grid(-3 * prof.U(), 3 * prof.U(), 1000);
  const auto laws = profile_law_residuals(prof, g);
  for (const auto& [name, e] : laws.entries()) {
    INFO(name);
    CHECK(e.max_abs <= 1e-9);
  }
  const auto ids = identity_residuals(prof, g);
  for (const auto& [name, e] : ids.entries()) {
    INFO(name);
    CHECK(e.max_abs <= 1e-8);
  }
  // Bracketing of phi' by the extremes of P on [-1, 1].
  double pmin = 1e300, pmax = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = -1.0 + i / 1000.0;
    pmin = std::min(pmin, p.quartic(x));
    pmax = std::max(pmax, p.quartic(x));
  }
  for (double u : g) {
    const double d = prof.eval(u).dphi;
    CHECK(d <= -std::sqrt(pmin) + 1e-12);
    CHECK(d >= -std::sqrt(pmax) - 1e-12);
  }
}

TEST_CASE("G double prime vanishes at u = 0") {
  const auto prof = solve_profile(AnnulusParams::make(2.0, 0.7));
  const double h = 1e-5;
  const double d = (prof.eval(h).dG - prof.eval(-h).dG) / (2 * h);
  CHECK(std::abs(d) < 1e-9);
}

TEST_CASE("profile CSV has header and one row per node") {
  const auto prof = solve_profile(AnnulusParams::make(1.0, 0.2), 1e-6, 64);
  std::ostringstream os;
  prof.write_csv(os);
  const auto text = os.str();
  CHECK(text.rfind("u,phi,phiprime,beta,G,Gprime\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 66);
}

TEST_CASE("tolerance below the table resolution is reported") {
  CHECK_THROWS_AS(solve_profile(AnnulusParams::make(1.0, 0.2), 1e-13, 8), SolverError);
}
