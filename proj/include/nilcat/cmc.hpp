#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nilcat/mesh.hpp"
#include "nilcat/nil3.hpp"
#include "nilcat/profile.hpp"
#include "nilcat/residual.hpp"

namespace nilcat {

// phi_* with phi_*'^2 = alpha_*^2 - cos^2 phi_*, phi_*(0) = 0, phi_*' < 0, alpha_*^2 = alpha^2 + 1.
class ConjugateProfile {
 public:
  ConjugateProfile(double alpha, double tol = kDefaultProfileTol,
                   int cells = kDefaultProfileCells);

  double alpha() const { return alpha_; }
  double alpha_star() const { return alpha_star_; }
  double U_star() const { return table_.half_period(); }
  double interpolation_error() const { return table_.interpolation_error(); }

  struct Sample {
    double phi = 0.0;
    double dphi = 0.0;
  };
  Sample eval(double u) const;

 private:
  double alpha_, alpha_star_;
  PhaseTable table_;
};

// Point of H^2 x R: Poincare disk coordinate and height.
struct H2xRPoint {
  std::complex<double> disk;
  double height = 0.0;
  Vec3 vec() const { return {disk.real(), disk.imag(), height}; }
};

struct CmcFieldSample {
  double hstar = 0.0;
  std::complex<double> H;        // h*_z with K1 = K2 = 0
  std::array<double, 3> G{};     // hyperboloid lift of g*
  std::array<double, 3> X{};     // hyperboloid point of the horizontal component
  double f = 0.0;
  double tau = 0.0;
  double lambda = 0.0;           // cosh^2(alpha v) / (phi' - alpha)^2
  double omega_cosh = 0.0;       // -phi'/cos(phi)
};

class CmcAnnulusModel {
 public:
  CmcAnnulusModel(double alpha, double tol = kDefaultProfileTol);

  double alpha() const { return conj_.alpha(); }
  double alpha_star() const { return conj_.alpha_star(); }
  double gamma() const { return -1.0 / (2.0 * alpha() * alpha_star()); }
  double U() const { return profile_.U(); }
  const Profile& profile() const { return profile_; }
  const ConjugateProfile& conjugate() const { return conj_; }

 private:
  Profile profile_;
  ConjugateProfile conj_;
};

// Throws DomainError for alpha <= 0.
CmcAnnulusModel build_cmc_annulus(double alpha, double tol = kDefaultProfileTol);

// Removable singularities at cos(phi) = 0: inside |cos phi| <= 1e-3 the value is the
// quadratic in cos^2 phi through three samples on one side (|cos phi| ~ 1e-2, 2e-2, 3e-2).
inline constexpr double kCosCut = 1e-3;
double removable_eval(const CmcAnnulusModel& m, const std::function<double(double)>& F,
                      double u);

// f(u) = (alpha cos phi_* - alpha_* cos phi) / (alpha cos phi cos^2 phi_*).
double f_of_u(const CmcAnnulusModel& m, double u);
// tau = (phi' + alpha)^2 / cos^2 phi.
double tau_of_u(const CmcAnnulusModel& m, double u);

// Throws RangeError when (alpha + alpha_*)|v| > 700.
CmcFieldSample hstar_field(const CmcAnnulusModel& m, double u, double v);

// F* = (X1 + i X2)/(1 + X3) and height h*. Throws RangeError when |F*| >= 1 - 1e-12
// or X3 + 1 <= 0. Intended for the graph strip |u| <= U/2.
H2xRPoint annulus_point(const CmcAnnulusModel& m, double u, double v);
std::function<Vec3(double, double)> annulus_sampler(const CmcAnnulusModel& m);

// Cayley transform of the disk onto the upper half-plane with (0,-1) -> 0, (0,1) -> inf.
std::complex<double> disk_to_halfplane(std::complex<double> w);
std::complex<double> halfplane_to_disk(std::complex<double> z);

// "cosh_omega": |phi' cos phi_* + alpha_* cos phi|; "cosh_omega_sq": |phi'^2 cos^2 phi_* -
// alpha_*^2 cos^2 phi|; "speed_star": |phi_*'^2 - alpha_*^2 + cos^2 phi_*|; "ode_A",
// "ode_Astar": relative residuals of A'^2 = (A^2-1)(A^2-alpha^2-1) for A = phi'/cos phi and
// A = alpha_*/cos phi_* (finite differences, |cos phi| >= 0.2); "U_star": |U_* - U|.
ResidualReport conjugacy_residuals(const CmcAnnulusModel& m, std::span<const double> us);

// Finite-difference residuals of the h* and H systems at grid points with |cos phi| >= 0.1:
// "hstar_zz", "hstar_zzbar", "H_is_hstar_z", "H_z", "H_zbar"; plus "lambda" (relative
// |tau + 4|H|^2 - lambda|, everywhere) and "hyperboloid" (|G3^2 - G1^2 - G2^2 - 1| / G3^2). The step is divided by max(1, alpha).
ResidualReport hstar_system_residuals(const CmcAnnulusModel& m, std::span<const double> us,
                                      std::span<const double> vs, double step = 1e-3);

struct HalfPlaneCurve {
  int sign = -1;                                // u = sign * U/2
  std::vector<double> v;
  std::vector<std::array<double, 2>> point;     // half-plane model
  std::vector<std::complex<double>> disk;
  std::vector<double> critical_v;               // zeros of d/dv (first coordinate)
  std::vector<double> expected_critical_v;      // from tanh(alpha v) = (-a_* +- sqrt(a^2-1))/(2a)
  bool strictly_monotone = false;
};

// Samples the printed level-zero curve F~(sign U/2, v). Critical points are sign changes
// of the logarithmic derivative (refined by Brent) and touching zeros (local minima of
// its modulus below 1e-9, refined by golden section).
HalfPlaneCurve halfplane_curve(const CmcAnnulusModel& m, int sign, double v_lo, double v_hi,
                               int n);

struct HorocycleFit {
  double exponent = 0.0;  // least-squares slope of log x2 against log |x1|
  double expected = 0.0;  // 1 - alpha / alpha_*
};
HorocycleFit horocycle_exponent_fit(const CmcAnnulusModel& m, double v_lo, double v_hi, int n);

// Mean curvature of a parametrized surface (w1, w2, t) in the disk model of H^2 x R,
// normal X_u x X_v. Default step 1e-3 max(1, |u|, |v|). Throws DegeneracyError for a
// degenerate first fundamental form.
double mean_curvature_h2xr(const std::function<Vec3(double, double)>& X, double u, double v,
                           double h = 0.0);

// Fundamental piece (u in [-U/2, U/2]) and its height reflection, parametrized as one
// loop: u' in [U/2, 3U/2] maps to (F*(U - u', v), -h*(U - u', v)). nu (even, >= 4) samples
// around the loop, nv across v in [v_lo, v_hi]; the v-ends are left open.
struct CmcMeshOptions {
  double v_lo = -1.5;
  double v_hi = 1.5;
  int nu = 64;
  int nv = 32;
  bool parallel = true;
};
H2xRPoint reflected_point(const CmcAnnulusModel& m, double u, double v);
std::function<Vec3(double, double)> reflected_sampler(const CmcAnnulusModel& m);
Mesh reflect_and_mesh(const CmcAnnulusModel& m, const CmcMeshOptions& opt = {});

}  // namespace nilcat
