#pragma once

#include <span>

#include "nilcat/mesh.hpp"
#include "nilcat/nil3.hpp"
#include "nilcat/profile.hpp"
#include "nilcat/residual.hpp"

namespace nilcat {

// The theta = 0 member of the family: C = 0, beta = 0, A = alpha v.
class HelicoidModel {
 public:
  explicit HelicoidModel(double alpha, double tol = kDefaultProfileTol);

  double alpha() const { return profile_.params().alpha; }
  const Profile& profile() const { return profile_; }
  double U() const { return profile_.U(); }

 private:
  Profile profile_;
};

// x-coordinates; throws RangeError when |alpha v| > 700.
Nil3Point helicoid_point(const HelicoidModel& m, double u, double v);
Nil3Point helicoid_point(double alpha, double u, double v);
SurfaceSampler helicoid_sampler(const HelicoidModel& m);

// u with G(u) = -c, by bisection (G is strictly decreasing at theta = 0).
double helicoid_u_for_y2(const HelicoidModel& m, double c);

struct RulingFit {
  double u_c = 0.0;
  double residual = 0.0;    // max orthogonal distance to the total-least-squares line in (y1, y3)
  double direction = 0.0;   // angle of the fitted line
  double y2_spread = 0.0;   // max - min of y2 over the samples
};

RulingFit ruling_residual(const HelicoidModel& m, double c, int samples, double v_lo = -2.0,
                          double v_hi = 2.0);

// "shift_U": X(u+U, v) = (-y1, y2 - G(U), -y3); "shift_2U": X(u+2U, v) = (y1, y2 - 2G(U), y3).
ResidualReport helicoid_period_residuals(const HelicoidModel& m, std::span<const double> us,
                                         std::span<const double> vs);

// Open (u, v) strip over u in [u_lo, u_hi], v in [v_lo, v_hi]; disk topology.
Mesh mesh_helicoid(const HelicoidModel& m, double u_lo, double u_hi, double v_lo, double v_hi,
                   int nu, int nv, bool parallel = true);

}  // namespace nilcat
