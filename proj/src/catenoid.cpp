#include "nilcat/catenoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/parallel.hpp"
#include "nilcat/period.hpp"
#include "nilcat/roots.hpp"
#include "nilcat/stencil.hpp"

namespace nilcat {

using std::numbers::pi;

CatenoidModel::CatenoidModel(const AnnulusParams& params, double tol)
    : profile_(solve_profile(params, tol)) {}

double CatenoidModel::period_identity() const {
  return alpha() * profile_.GU() + C() * profile_.betaU();
}

CatenoidModel build_catenoid(double alpha, double tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("build_catenoid: alpha must be positive and finite");
  }
  const auto root = find_theta_tilde(alpha);
  return CatenoidModel(AnnulusParams::make(alpha, root.theta), tol);
}

Nil3Point catenoid_point_at_A(const CatenoidModel& m, const ProfileSample& s, double A) {
  const double a = m.alpha(), C = m.C(), dG = s.dG;
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  const double ch = std::cosh(A), sh = std::sinh(A);
  Nil3Point p;
  p.x1 = (dG / a) * c * sh - (C / a) * sn * ch;
  p.x2 = (C / a) * (A - s.beta) - s.G;
  p.x3 = -p.x1 * p.x2 / 2 + (C / a) * (dG / a - 1) * c * ch - (1 / a) * (C * C / a + dG) * sn * sh;
  return p;
}

CatenoidSample immersion_point(const CatenoidModel& m, double u, double v) {
  const auto s = m.profile().eval(u);
  CatenoidSample out;
  out.A = m.alpha() * v + s.beta;
  if (!(std::abs(out.A) <= kMaxAbsA)) {
    std::ostringstream msg;
    msg << "immersion_point: |A| = " << std::abs(out.A) << " exceeds " << kMaxAbsA << " at (" << u
        << ", " << v << "); shrink the v-range";
    throw RangeError(msg.str());
  }
  out.point = catenoid_point_at_A(m, s, out.A);
  const double ch = std::cosh(out.A);
  out.lambda = (s.dG * s.dG + m.C() * m.C()) * ch * ch;
  return out;
}

SurfaceSampler catenoid_sampler(const CatenoidModel& m) {
  return [&m](double u, double v) { return immersion_point(m, u, v).point; };
}

double period_closure_residual(const CatenoidModel& m, std::span<const double> us,
                               std::span<const double> vs) {
  const auto Z = m.Z();
  double worst = 0.0;
  for (double u : us)
    for (double v : vs) {
      const Vec3 a = immersion_point(m, u, v).point.vec();
      const Vec3 b = immersion_point(m, u + Z.real(), v + Z.imag()).point.vec();
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  return worst;
}

ResidualReport symmetry_residuals(const CatenoidModel& m, std::span<const double> us,
                                  std::span<const double> vs) {
  const double U = m.U(), V = m.V();
  ResidualReport rep;
  for (double u : us)
    for (double v : vs) {
      const auto p = immersion_point(m, u, v).point;
      const auto a = immersion_point(m, u + U, v + V).point;
      const auto b = immersion_point(m, -u, -v).point;
      const auto c = immersion_point(m, U - u, V - v).point;
      rep.record("rot_x2", std::max({std::abs(a.x1 + p.x1), std::abs(a.x2 - p.x2),
                                     std::abs(a.x3 + p.x3)}),
                 u, v);
      rep.record("rot_x3", std::max({std::abs(b.x1 + p.x1), std::abs(b.x2 + p.x2),
                                     std::abs(b.x3 - p.x3)}),
                 u, v);
      rep.record("rot_x1", std::max({std::abs(c.x1 - p.x1), std::abs(c.x2 + p.x2),
                                     std::abs(c.x3 + p.x3)}),
                 u, v);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Sections

namespace {

struct SectionPoint {
  double y1, y2, y3;
};

SectionPoint section_point(const CatenoidModel& m, double c, double u) {
  const auto s = m.profile().eval(u);
  const double A = (m.alpha() / m.C()) * (c + s.G) + s.beta;
  if (!(std::abs(A) <= kMaxAbsA)) {
    throw RangeError("section_curve: |A| exceeds 700 on the section; |c| is too large");
  }
  const Vec3 y = to_y(catenoid_point_at_A(m, s, A));
  return {y[0], y[1], y[2]};
}

std::array<double, 2> section_yy(const CatenoidModel& m, double c, double u) {
  const auto p = section_point(m, c, u);
  return {p.y1, p.y3};
}

}  // namespace

SectionCurve section_curve(const CatenoidModel& m, double c, int n) {
  if (n < 16) throw ResolutionError("section_curve: need at least 16 samples");
  if (m.C() == 0.0) throw DomainError("section_curve: C = 0 (theta = 0) has no closed sections");
  const double U = m.U();
  SectionCurve sc;
  sc.c = c;
  sc.min_curvature = std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 2>> tangent(n);
  const double h = 1e-3 * std::max(1.0, U);
  for (int k = 0; k < n; ++k) {
    const double u = -U + 2 * U * k / n;
    const auto p = section_point(m, c, u);
    sc.u.push_back(u);
    sc.y.push_back({p.y1, p.y3});
    sc.y2_deviation = std::max(sc.y2_deviation, std::abs(p.y2 - c));

    const auto q = section_yy(m, c, u + 2 * U);
    sc.closure_gap = std::max(sc.closure_gap, std::hypot(q[0] - p.y1, q[1] - p.y3));
    const auto r = section_yy(m, c, u + U);
    sc.antipodal_gap = std::max(sc.antipodal_gap, std::hypot(r[0] + p.y1, r[1] + p.y3));

    auto y1 = [&](double t) { return section_yy(m, c, t)[0]; };
    auto y3 = [&](double t) { return section_yy(m, c, t)[1]; };
    const double d1 = stencil::d1(y1, u, h), d3 = stencil::d1(y3, u, h);
    const double dd1 = stencil::d2(y1, u, h), dd3 = stencil::d2(y3, u, h);
    const double speed = std::hypot(d1, d3);
    // Counter-clockwise orientation in the (y1, y3) plane is positive.
    const double kappa = (d1 * dd3 - d3 * dd1) / (speed * speed * speed);
    sc.min_curvature = std::min(sc.min_curvature, kappa);
    const double phi = m.profile().eval(u).phi;
    sc.slope_residual =
        std::max(sc.slope_residual, std::abs(d3 * std::cos(phi) + d1 * std::sin(phi)) / speed);
    tangent[k] = {d1, d3};
  }
  double turn = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto& a = tangent[k];
    const auto& b = tangent[(k + 1) % n];
    turn += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
  }
  sc.turning_number = turn / (2 * pi);

  sc.y1_increasing_on_half = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    if (std::abs(sc.u[k]) >= U / 2) continue;
    if (!(sc.y[k][0] > prev)) sc.y1_increasing_on_half = false;
    prev = sc.y[k][0];
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Remarkable curves and curvature

RemarkableCurves remarkable_curves(const CatenoidModel& m) { return {&m}; }

std::array<double, 2> RemarkableCurves::bottom(double y2) const {
  const double a = model->alpha(), C = model->C();
  const double s = std::sqrt(model->params().quartic(1.0));
  const double A = a * y2 / C;
  return {(a - s) / a * std::sinh(A), -C * s / (a * a) * std::cosh(A)};
}

std::array<double, 2> RemarkableCurves::vertical(double y2) const {
  const double a = model->alpha(), C = model->C();
  const double A = a * y2 / C;
  return {C / a * std::cosh(A), (2 * C * C - model->params().cos2t()) / (2 * a * a) * std::sinh(A)};
}

double RemarkableCurves::projection_halfwidth(double y2) const {
  const double a = model->alpha(), C = model->C();
  return C / a * std::cosh(a * y2 / C);
}

CurvatureSample gauss_curvature_K(const CatenoidModel& m, double u, double v) {
  const auto s = m.profile().eval(u);
  const double a = m.alpha(), C = m.C();
  const double A = a * v + s.beta;
  if (!(std::abs(A) <= kMaxAbsA)) throw RangeError("gauss_curvature_K: |A| exceeds 700");
  const double c = std::cos(s.phi), sn = std::sin(s.phi), ch = std::cosh(A);
  CurvatureSample k;
  k.K_lambda = 2 * C * s.dphi * sn * c * std::tanh(A) - (C * C * c * c * c * c + a * a) / (ch * ch) -
               (C * C + s.dG * s.dG) * sn * sn * c * c - s.dG * s.dphi * (2 * c * c - 1);
  k.lambda = (s.dG * s.dG + C * C) * ch * ch;
  k.K = k.K_lambda / k.lambda;
  return k;
}

double curvature_K_lambda_fd(const CatenoidModel& m, double u, double v, double h) {
  auto loglam = [&](double uu, double vv) {
    const auto s = m.profile().eval(uu);
    const double A = m.alpha() * vv + s.beta;
    return std::log(s.dG * s.dG + m.C() * m.C()) + 2 * std::log(std::cosh(A));
  };
  const double luu = stencil::d2([&](double t) { return loglam(t, v); }, u, h);
  const double lvv = stencil::d2([&](double t) { return loglam(u, t); }, v, h);
  return -0.5 * (luu + lvv);
}

// ---------------------------------------------------------------------------
// Limits

std::array<double, 3> limit_deviation(const CatenoidModel& m, double u_hat, double v_hat) {
  const double a = m.alpha();
  const double u = u_hat / a;
  const double v = (4 * std::log(a) + v_hat) / (2 * a);
  const Vec3 y = to_y(immersion_point(m, u, v).point);
  const double e = std::exp(v_hat / 2) / 4;
  return {std::abs(y[0] - std::sin(u_hat) * e), std::abs(y[1]), std::abs(y[2] + std::cos(u_hat) * e)};
}

std::array<double, 3> limit_deviation(double alpha, double u_hat, double v_hat) {
  return limit_deviation(build_catenoid(alpha), u_hat, v_hat);
}

double waist_extent(const CatenoidModel& m, int n) {
  const double U = m.U();
  auto radius = [&](double u) {
    const auto p = section_point(m, 0.0, u);
    return std::hypot(p.y1, p.y3);
  };
  double best = -1.0, best_u = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = -U + 2 * U * k / n;
    const double r = radius(u);
    if (r > best) {
      best = r;
      best_u = u;
    }
  }
  const double du = 2 * U / n;
  const double u_star = golden_minimize([&](double u) { return -radius(u); }, best_u - du, best_u + du);
  return std::max(best, radius(u_star));
}

double waist_extent(double alpha, int n) { return waist_extent(build_catenoid(alpha), n); }

// ---------------------------------------------------------------------------
// Meshes

Mesh mesh_catenoid(const CatenoidModel& m, const CatenoidMeshOptions& opt) {
  if (opt.nu < 16 || opt.nv < 2) throw ResolutionError("mesh_catenoid: need nu >= 16, nv >= 2");
  if (!(opt.v_hi > opt.v_lo)) throw std::invalid_argument("mesh_catenoid: empty v-range");
  const double U = m.U(), V = m.V();
  // |A| <= alpha (max|w| + |V|) + |beta| with |beta| <= |beta(U)| on [-U, U].
  const double bound = m.alpha() * (std::max(std::abs(opt.v_lo), std::abs(opt.v_hi)) + std::abs(V)) +
                       std::abs(m.profile().betaU());
  if (!(bound <= kMaxAbsA)) {
    std::ostringstream msg;
    msg << "mesh_catenoid: v-range [" << opt.v_lo << ", " << opt.v_hi << "] reaches |A| ~ "
        << bound << " > 700";
    throw RangeError(msg.str());
  }
  const int nu = opt.nu, nv = opt.nv;
  std::vector<Vec3> verts(static_cast<std::size_t>(nu) * nv);
  auto body = [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / nv, j = static_cast<int>(idx) % nv;
    const double u = -U + 2 * U * i / nu;
    const double w = opt.v_lo + (opt.v_hi - opt.v_lo) * j / (nv - 1);
    verts[idx] = immersion_point(m, u, w + (u / U) * V).point.vec();
  };
  if (opt.parallel) {
    parallel::for_each_index(verts.size(), body);
  } else {
    parallel::for_each_index_serial(verts.size(), body);
  }
  return cylinder_mesh(std::move(verts), nu, nv);
}

double projection_bound_excess(const CatenoidModel& m, const Mesh& mesh) {
  const auto rc = remarkable_curves(m);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& x : mesh.vertices) {
    const Vec3 y = to_y(Nil3Point::from(x));
    worst = std::max(worst, std::abs(y[0]) - rc.projection_halfwidth(y[1]));
  }
  return worst;
}

SectionSpotCheck section_membership_spot_check(const CatenoidModel& m, const Mesh& mesh,
                                               int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, mesh.vertices.size() - 1);
  const int n = 2048;
  SectionSpotCheck out;
  for (int s = 0; s < samples; ++s) {
    const Vec3 y = to_y(Nil3Point::from(mesh.vertices[pick(rng)]));
    const double c = y[1];
    std::vector<std::array<double, 2>> poly(n);
    for (int k = 0; k < n; ++k) poly[k] = section_yy(m, c, -m.U() + 2 * m.U() * k / n);

    double dist = std::numeric_limits<double>::infinity(), chord = 0.0, winding = 0.0;
    for (int k = 0; k < n; ++k) {
      const auto& a = poly[k];
      const auto& b = poly[(k + 1) % n];
      const double ex = b[0] - a[0], ez = b[1] - a[1];
      const double len2 = ex * ex + ez * ez;
      chord = std::max(chord, std::sqrt(len2));
      const double t = std::clamp(((y[0] - a[0]) * ex + (y[2] - a[1]) * ez) / len2, 0.0, 1.0);
      dist = std::min(dist, std::hypot(a[0] + t * ex - y[0], a[1] + t * ez - y[2]));
      winding += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
    }
    out.max_distance = std::max(out.max_distance, dist);
    // Sagitta bound for a chord of length l on a curve with bounded curvature: l^2/8 kappa.
    out.chord_tolerance = std::max(out.chord_tolerance, chord * chord);
    if (std::abs(std::abs(winding) / (2 * pi) - 1.0) > 1e-6) out.axis_enclosed_once = false;
  }
  return out;
}

GraphFunction catenoid_local_graph(const CatenoidModel& m, double u0, double v0) {
  return [&m, u0, v0](double x1, double x2) {
    double u = u0, v = v0;
    for (int it = 0; it < 60; ++it) {
      const auto p = immersion_point(m, u, v).point;
      const double r1 = p.x1 - x1, r2 = p.x2 - x2;
      const double h = 1e-6;
      const auto pu = immersion_point(m, u + h, v).point, mu = immersion_point(m, u - h, v).point;
      const auto pv = immersion_point(m, u, v + h).point, mv = immersion_point(m, u, v - h).point;
      const double a = (pu.x1 - mu.x1) / (2 * h), b = (pv.x1 - mv.x1) / (2 * h);
      const double c = (pu.x2 - mu.x2) / (2 * h), d = (pv.x2 - mv.x2) / (2 * h);
      const double det = a * d - b * c;
      if (det == 0.0) throw DegeneracyError("catenoid_local_graph: projection is singular");
      const double du = (d * r1 - b * r2) / det, dv = (-c * r1 + a * r2) / det;
      u -= du;
      v -= dv;
      if (std::abs(du) + std::abs(dv) < 1e-16 * (1 + std::abs(u) + std::abs(v))) break;
    }
    return immersion_point(m, u, v).point.x3;
  };
}

}  // namespace nilcat
