#include "nilcat/helicoid.hpp"

#include <cmath>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/parallel.hpp"
#include "nilcat/roots.hpp"

namespace nilcat {

HelicoidModel::HelicoidModel(double alpha, double tol)
    : profile_(solve_profile(AnnulusParams::make(alpha, 0.0), tol)) {}

Nil3Point helicoid_point(const HelicoidModel& m, double u, double v) {
  const double a = m.alpha(), A = a * v;
  if (!(std::abs(A) <= 700.0)) {
    std::ostringstream msg;
    msg << "helicoid_point: |alpha v| = " << std::abs(A) << " exceeds 700";
    throw RangeError(msg.str());
  }
  const auto s = m.profile().eval(u);
  const double sh = std::sinh(A);
  const double y1 = s.dG / a * std::cos(s.phi) * sh;
  const double y2 = -s.G;
  const double y3 = -s.dG / a * std::sin(s.phi) * sh;
  return from_y({y1, y2, y3});
}

Nil3Point helicoid_point(double alpha, double u, double v) {
  return helicoid_point(HelicoidModel(alpha), u, v);
}

SurfaceSampler helicoid_sampler(const HelicoidModel& m) {
  return [&m](double u, double v) { return helicoid_point(m, u, v); };
}

double helicoid_u_for_y2(const HelicoidModel& m, double c) {
  if (!std::isfinite(c)) throw DomainError("helicoid_u_for_y2: c must be finite");
  const double U = m.U();
  // -G is increasing and -G(u + U) = -G(u) - G(U) with G(U) < 0, so the range is all of R.
  auto f = [&](double u) { return -m.profile().eval(u).G - c; };
  double lo = -U, hi = U;
  while (f(lo) > 0) lo -= U;
  while (f(hi) < 0) hi += U;
  return bisect(f, lo, hi).root;
}

RulingFit ruling_residual(const HelicoidModel& m, double c, int samples, double v_lo,
                          double v_hi) {
  if (samples < 3) throw ResolutionError("ruling_residual: need at least 3 samples");
  RulingFit fit;
  fit.u_c = helicoid_u_for_y2(m, c);
  Eigen::MatrixXd P(samples, 2);
  double y2_lo = INFINITY, y2_hi = -INFINITY;
  for (int k = 0; k < samples; ++k) {
    const double v = v_lo + (v_hi - v_lo) * k / (samples - 1);
    const Vec3 y = to_y(helicoid_point(m, fit.u_c, v));
    P(k, 0) = y[0];
    P(k, 1) = y[2];
    y2_lo = std::min(y2_lo, y[1]);
    y2_hi = std::max(y2_hi, y[1]);
  }
  fit.y2_spread = y2_hi - y2_lo;
  const Eigen::RowVector2d mean = P.colwise().mean();
  const Eigen::MatrixXd Q = P.rowwise() - mean;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Q.transpose() * Q);
  const Eigen::Vector2d normal = es.eigenvectors().col(0);  // smallest eigenvalue
  fit.residual = (Q * normal).cwiseAbs().maxCoeff();
  const Eigen::Vector2d dir = es.eigenvectors().col(1);
  fit.direction = std::atan2(dir[1], dir[0]);
  return fit;
}

ResidualReport helicoid_period_residuals(const HelicoidModel& m, std::span<const double> us,
                                         std::span<const double> vs) {
  const double U = m.U(), GU = m.profile().GU();
  ResidualReport rep;
  for (double u : us)
    for (double v : vs) {
      const Vec3 y = to_y(helicoid_point(m, u, v));
      const Vec3 a = to_y(helicoid_point(m, u + U, v));
      const Vec3 b = to_y(helicoid_point(m, u + 2 * U, v));
      rep.record("shift_U", (a - Vec3(-y[0], y[1] - GU, -y[2])).cwiseAbs().maxCoeff(), u, v);
      rep.record("shift_2U", (b - Vec3(y[0], y[1] - 2 * GU, y[2])).cwiseAbs().maxCoeff(), u, v);
    }
  return rep;
}

Mesh mesh_helicoid(const HelicoidModel& m, double u_lo, double u_hi, double v_lo, double v_hi,
                   int nu, int nv, bool parallel) {
  if (nu < 2 || nv < 2) throw ResolutionError("mesh_helicoid: need nu, nv >= 2");
  if (!(m.alpha() * std::max(std::abs(v_lo), std::abs(v_hi)) <= 700.0)) {
    throw RangeError("mesh_helicoid: v-range reaches |alpha v| > 700");
  }
  std::vector<Vec3> verts(static_cast<std::size_t>(nu) * nv);
  auto body = [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / nv, j = static_cast<int>(idx) % nv;
    const double u = u_lo + (u_hi - u_lo) * i / (nu - 1);
    const double v = v_lo + (v_hi - v_lo) * j / (nv - 1);
    verts[idx] = helicoid_point(m, u, v).vec();
  };
  parallel ? parallel::for_each_index(verts.size(), body)
           : parallel::for_each_index_serial(verts.size(), body);
  return grid_mesh(std::move(verts), nu, nv);
}

}  // namespace nilcat
