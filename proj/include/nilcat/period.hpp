#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nilcat/profile.hpp"

namespace nilcat {

struct PeriodIntegrals {
  double L = 0.0;
  std::optional<double> L1, L2;
  std::optional<double> I1, I2, I3;
  double quadrature_error_estimate = 0.0;
  bool converged = true;
};

inline constexpr double kDefaultQuadratureTol = 1e-12;

// L(alpha, theta) with x = sin t, which leaves a smooth integrand on [-pi/2, pi/2].
// With split = true the L1 + L2 decomposition is computed as well.
PeriodIntegrals L_integral(const AnnulusParams& params, double tol = kDefaultQuadratureTol,
                           bool split = false);

// L integrand in the t variable; exposed for brute-force cross-checks.
double L_integrand_t(const AnnulusParams& params, double t);

struct ThetaTilde {
  double alpha = 0.0;
  double theta = 0.0;
  double L = 0.0;  // L(alpha, theta) at the returned root
  int iterations = 0;
};

// Unique root of theta -> L(alpha, theta) in (0, min(theta+ - 1e-9, pi/4)), by bisection
// to full double precision. Throws SolverError if the bracket does not change sign.
ThetaTilde find_theta_tilde(double alpha, double tol = kDefaultQuadratureTol);

// I1, I2, I3 with alpha L = I1 - cos(2 theta) I2 + I3.
PeriodIntegrals appendix_I_decomposition(double alpha, double theta,
                                         double tol = kDefaultQuadratureTol);

// pi alpha^2 / (sqrt(alpha^2+1) (alpha + sqrt(alpha^2+1)))
double I2_lower_bound(double alpha);
// Upper bounds for I1 and I3 from C <= 1/(2 alpha) and P >= alpha^2 - 1 (alpha > 1).
double I1_upper_bound(double alpha);
double I3_upper_bound(double alpha);

// L(alpha, theta_k) on n equally spaced thetas strictly inside the root bracket.
std::vector<std::pair<double, double>> L_theta_ladder(double alpha, int n,
                                                      double tol = kDefaultQuadratureTol);

struct SweepRow {
  double alpha, theta_tilde, L_residual, I1, I2, I3;
};
std::vector<SweepRow> period_sweep(std::span<const double> alphas,
                                   double tol = kDefaultQuadratureTol);
// Columns: alpha,theta_tilde,L_residual,I1,I2,I3
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

}  // namespace nilcat
