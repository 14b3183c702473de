#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "nilcat/mesh.hpp"
#include "nilcat/nil3.hpp"
#include "nilcat/profile.hpp"
#include "nilcat/residual.hpp"

namespace nilcat {

inline constexpr double kMaxAbsA = 700.0;

// Minimal immersion of the constant-Q family for one (alpha, theta). With
// theta = theta_tilde(alpha) it closes up into the horizontal catenoid.
class CatenoidModel {
 public:
  CatenoidModel(const AnnulusParams& params, double tol = kDefaultProfileTol);

  const AnnulusParams& params() const { return profile_.params(); }
  const Profile& profile() const { return profile_; }
  double alpha() const { return params().alpha; }
  double theta() const { return params().theta; }
  double C() const { return params().C; }
  double U() const { return profile_.U(); }
  double V() const { return profile_.V(); }
  std::complex<double> Z() const { return profile_.Z(); }
  // alpha G(U) + C beta(U); zero exactly when the period closes.
  double period_identity() const;

 private:
  Profile profile_;
};

// theta_tilde from the period solver, then the profile. Throws DomainError for alpha <= 0.
CatenoidModel build_catenoid(double alpha, double tol = kDefaultProfileTol);

struct CatenoidSample {
  Nil3Point point;
  double lambda = 0.0;  // conformal factor (G'^2 + C^2) cosh^2 A
  double A = 0.0;
};

// Closed-form coordinates; throws RangeError when |A| > 700.
CatenoidSample immersion_point(const CatenoidModel& m, double u, double v);
// Same closed forms with A prescribed instead of v (used along sections).
Nil3Point catenoid_point_at_A(const CatenoidModel& m, const ProfileSample& s, double A);
SurfaceSampler catenoid_sampler(const CatenoidModel& m);

// max over the grid of |X(z + Z) - X(z)| in coordinates.
double period_closure_residual(const CatenoidModel& m, std::span<const double> us,
                               std::span<const double> vs);

// "rot_x2": (u+U, v+V) -> (-x1, x2, -x3); "rot_x3": (-u, -v) -> (-x1, -x2, x3);
// "rot_x1": (U-u, V-v) -> (x1, -x2, -x3).
ResidualReport symmetry_residuals(const CatenoidModel& m, std::span<const double> us,
                                  std::span<const double> vs);

struct SectionCurve {
  double c = 0.0;
  std::vector<double> u;                 // u in [-U, U)
  std::vector<std::array<double, 2>> y;  // (y1, y3)
  double closure_gap = 0.0;              // max |gamma(u + 2U) - gamma(u)|
  double antipodal_gap = 0.0;            // max |gamma(u + U) + gamma(u)|
  double y2_deviation = 0.0;             // max |y2 - c|
  double min_curvature = 0.0;            // planar curvature, finite differences
  double turning_number = 0.0;
  double slope_residual = 0.0;           // max |y3' cos(phi) + y1' sin(phi)| / |gamma'|
  bool y1_increasing_on_half = false;    // on u in (-U/2, U/2)
};

// Intersection with the vertical plane y2 = c; n >= 16 samples over one period.
SectionCurve section_curve(const CatenoidModel& m, double c, int n);

// y-coordinates of the remarkable curves as functions of y2.
struct RemarkableCurves {
  const CatenoidModel* model;
  // u = 0: lowest points of the sections
  std::array<double, 2> bottom(double y2) const;
  // u = U/2: where the tangent plane is vertical
  std::array<double, 2> vertical(double y2) const;
  // |y1| <= (C/alpha) cosh(alpha y2 / C) on the surface
  double projection_halfwidth(double y2) const;
};
RemarkableCurves remarkable_curves(const CatenoidModel& m);

struct CurvatureSample {
  double K = 0.0;
  double K_lambda = 0.0;
  double lambda = 0.0;
};
// Closed-form K lambda expansion divided by lambda.
CurvatureSample gauss_curvature_K(const CatenoidModel& m, double u, double v);
// -(1/2) Laplacian of ln(lambda), by finite differences of the conformal factor.
double curvature_K_lambda_fd(const CatenoidModel& m, double u, double v, double h = 1e-3);

// Rescaled parameters u = u_hat/alpha, v = (4 ln alpha + v_hat)/(2 alpha) and the three
// deviations from the limit plane point ((sin u_hat/4) e^{v_hat/2}, 0, -(cos u_hat/4) e^{v_hat/2}).
std::array<double, 3> limit_deviation(const CatenoidModel& m, double u_hat, double v_hat);
std::array<double, 3> limit_deviation(double alpha, double u_hat, double v_hat);

// max of sqrt(y1^2 + y3^2) along the section y2 = 0.
double waist_extent(const CatenoidModel& m, int n = 4096);
double waist_extent(double alpha, int n = 4096);

struct CatenoidMeshOptions {
  double v_lo = -3.0, v_hi = 3.0;
  int nu = 64, nv = 64;
  bool parallel = true;
};

// One full period in u on the sheared strip v = w + (u/U) V, u in [-U, U), so the last
// column welds onto the first under z -> z + Z. Vertices in x-coordinates.
Mesh mesh_catenoid(const CatenoidModel& m, const CatenoidMeshOptions& opt);

// Vertex-wise check of the projection bound; returns the worst excess (<= 0 when inside).
double projection_bound_excess(const CatenoidModel& m, const Mesh& mesh);

// Slab-wise embeddedness spot check: for `samples` random vertices p, the section curve
// at c = y2(p) is sampled independently (A from c rather than from v); p must lie on that
// polygon and the x2-axis point (y1, y3) = (0, 0) must be enclosed exactly once.
struct SectionSpotCheck {
  double max_distance = 0.0;  // vertex to section polygon
  double chord_tolerance = 0.0;
  bool axis_enclosed_once = true;
};
SectionSpotCheck section_membership_spot_check(const CatenoidModel& m, const Mesh& mesh,
                                               int samples, unsigned seed = 1);

// x3 = f(x1, x2) near the image of (u0, v0), by Newton inversion of (u, v) -> (x1, x2).
GraphFunction catenoid_local_graph(const CatenoidModel& m, double u0, double v0);

}  // namespace nilcat
