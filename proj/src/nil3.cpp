#include "nilcat/nil3.hpp"

#include <cmath>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/stencil.hpp"

namespace nilcat {

Mat3 nil3_metric(const Nil3Point& p) {
  const double x1 = p.x1, x2 = p.x2;
  Mat3 g;
  g << 1 + x2 * x2 / 4, -x1 * x2 / 4, x2 / 2,  //
      -x1 * x2 / 4, 1 + x1 * x1 / 4, -x1 / 2,  //
      x2 / 2, -x1 / 2, 1;
  return g;
}

MetricConnection metric_and_connection(const Nil3Point& p) {
  const double x1 = p.x1, x2 = p.x2;
  MetricConnection mc;
  mc.metric = nil3_metric(p);
  auto& G1 = mc.christoffel[0];
  auto& G2 = mc.christoffel[1];
  auto& G3 = mc.christoffel[2];
  G1.setZero();
  G2.setZero();
  G3.setZero();
  // Gamma^1
  G1(0, 1) = G1(1, 0) = x2 / 4;
  G1(1, 1) = -x1 / 2;
  G1(1, 2) = G1(2, 1) = 0.5;
  // Gamma^2
  G2(0, 0) = -x2 / 2;
  G2(0, 1) = G2(1, 0) = x1 / 4;
  G2(0, 2) = G2(2, 0) = -0.5;
  // Gamma^3
  G3(0, 0) = -x1 * x2 / 4;
  G3(0, 1) = G3(1, 0) = (x1 * x1 - x2 * x2) / 8;
  G3(0, 2) = G3(2, 0) = -x1 / 4;
  G3(1, 1) = x1 * x2 / 4;
  G3(1, 2) = G3(2, 1) = -x2 / 4;
  return mc;
}

FrameVector to_frame(const Nil3Point& p, const Vec3& v) {
  return {v[0], v[1], v[2] + 0.5 * (p.x2 * v[0] - p.x1 * v[1])};
}

Vec3 from_frame(const Nil3Point& p, const FrameVector& a) {
  return {a.a1, a.a2, a.a3 - 0.5 * (p.x2 * a.a1 - p.x1 * a.a2)};
}

Vec3 to_y(const Nil3Point& p) { return {p.x1, p.x2, p.x3 + p.x1 * p.x2 / 2}; }

Nil3Point from_y(const Vec3& y) { return {y[0], y[1], y[2] - y[0] * y[1] / 2}; }

SurfaceFrame surface_frame(const SurfaceSampler& X, double u, double v, double h,
                           bool second_order) {
  if (!(h > 0.0)) h = stencil::surface_step(u, v);
  auto P = [&](double a, double b) { return X(a, b).vec(); };
  SurfaceFrame s;
  s.point = X(u, v);
  s.Xu = stencil::d1([&](double a) { return P(a, v); }, u, h);
  s.Xv = stencil::d1([&](double b) { return P(u, b); }, v, h);

  const Mat3 gm = nil3_metric(s.point);
  s.E = s.Xu.dot(gm * s.Xu);
  s.F = s.Xu.dot(gm * s.Xv);
  s.G = s.Xv.dot(gm * s.Xv);
  const double det = s.E * s.G - s.F * s.F;
  if (!(det > 1e-14)) {
    std::ostringstream msg;
    msg << "surface_frame: degenerate first fundamental form (EG-F^2=" << det << ") at (" << u
        << ", " << v << ")";
    throw DegeneracyError(msg.str());
  }
  const Vec3 a = to_frame(s.point, s.Xu).vec();
  const Vec3 b = to_frame(s.point, s.Xv).vec();
  const Vec3 n = a.cross(b).normalized();
  s.normal = {n[0], n[1], n[2]};
  if (!second_order) return s;

  const auto mc = metric_and_connection(s.point);
  const Vec3 Xuu = stencil::d2([&](double t) { return P(t, v); }, u, h);
  const Vec3 Xvv = stencil::d2([&](double t) { return P(u, t); }, v, h);
  const Vec3 Xuv = stencil::d11(P, u, v, h);
  auto cov = [&](const Vec3& second, const Vec3& A, const Vec3& B) {
    Vec3 out = second;
    for (int k = 0; k < 3; ++k) out[k] += A.dot(mc.christoffel[k] * B);
    return out;
  };
  const Vec3 N = from_frame(s.point, s.normal);
  const Vec3 gN = gm * N;
  s.e = cov(Xuu, s.Xu, s.Xu).dot(gN);
  s.f = cov(Xuv, s.Xu, s.Xv).dot(gN);
  s.g = cov(Xvv, s.Xv, s.Xv).dot(gN);
  s.mean_curvature = (s.e * s.G - 2 * s.f * s.F + s.g * s.E) / (2 * det);
  return s;
}

double mean_curvature_nil3(const SurfaceSampler& X, double u, double v, double h) {
  return surface_frame(X, u, v, h).mean_curvature;
}

GaussValue gauss_value(const FrameVector& n) {
  return {std::complex<double>(n.a1, n.a2) / (1.0 + n.a3), n.a3};
}

GaussValue gauss_value(const SurfaceSampler& X, double u, double v, double h) {
  return gauss_value(surface_frame(X, u, v, h, false).normal);
}

GaussMapResiduals gauss_map_and_residuals(const SurfaceSampler& X, double u, double v, double h,
                                          double outer) {
  using cd = std::complex<double>;
  if (!(outer > 0.0)) outer = 1e-2 * std::fmax(1.0, std::fmax(std::fabs(u), std::fabs(v)));
  GaussMapResiduals r;
  r.gauss = gauss_value(X, u, v, h);
  if (!(std::abs(r.gauss.nu) > 1e-10)) {
    std::ostringstream msg;
    msg << "gauss_map_and_residuals: tangent plane is vertical (nu=" << r.gauss.nu << ") at ("
        << u << ", " << v << ")";
    throw DegeneracyError(msg.str());
  }
  auto g = [&](double a, double b) { return gauss_value(X, a, b, h).g; };
  const cd gu = stencil::d1([&](double a) { return g(a, v); }, u, outer);
  const cd gv = stencil::d1([&](double b) { return g(u, b); }, v, outer);
  const cd guu = stencil::d2([&](double a) { return g(a, v); }, u, outer);
  const cd gvv = stencil::d2([&](double b) { return g(u, b); }, v, outer);
  const cd I(0.0, 1.0);
  const cd gz = 0.5 * (gu - I * gv);
  const cd gzb = 0.5 * (gu + I * gv);
  const cd gzzb = 0.25 * (guu + gvv);
  const cd g0 = r.gauss.g;
  const double m = 1.0 - std::norm(g0);
  r.harmonic_residual = std::abs(m * gzzb + 2.0 * std::conj(g0) * gz * gzb);
  // conj(g)_z = conj(g_zbar)
  r.Q_num = 4.0 * gz * std::conj(gzb) / (m * m);
  return r;
}

GraphJet graph_jet(const GraphFunction& f, double x1, double x2, double h) {
  GraphJet j;
  j.p = stencil::d1([&](double a) { return f(a, x2); }, x1, h) + x2 / 2;
  j.q = stencil::d1([&](double b) { return f(x1, b); }, x2, h) - x1 / 2;
  j.r = stencil::d2([&](double a) { return f(a, x2); }, x1, h);
  j.s = stencil::d11(f, x1, x2, h);
  j.t = stencil::d2([&](double b) { return f(x1, b); }, x2, h);
  return j;
}

double graph_pde_residual(const GraphFunction& f, double x1, double x2, double h) {
  const auto j = graph_jet(f, x1, x2, h);
  return std::abs((1 + j.q * j.q) * j.r - 2 * j.p * j.q * j.s + (1 + j.p * j.p) * j.t);
}

}  // namespace nilcat
