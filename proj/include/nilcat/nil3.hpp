#pragma once

#include <array>
#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace nilcat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// A point of Nil3 in exponential coordinates.
struct Nil3Point {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;

  Vec3 vec() const { return {x1, x2, x3}; }
  static Nil3Point from(const Vec3& v) { return {v[0], v[1], v[2]}; }
};

// Components in the left-invariant orthonormal frame (E1, E2, E3 = xi).
struct FrameVector {
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;

  double norm2() const { return a1 * a1 + a2 * a2 + a3 * a3; }
  Vec3 vec() const { return {a1, a2, a3}; }
};

struct GaussValue {
  std::complex<double> g;
  double nu = 1.0;  // E3-component of the unit normal
};

// Second-order jet of a local graph x3 = f(x1, x2), with the shifted gradient
// p = f_x1 + x2/2, q = f_x2 - x1/2.
struct GraphJet {
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, t = 0.0;
};

struct MetricConnection {
  Mat3 metric;
  // christoffel[k](i, j) = Gamma^k_ij
  std::array<Mat3, 3> christoffel;
};

MetricConnection metric_and_connection(const Nil3Point& p);
Mat3 nil3_metric(const Nil3Point& p);

// Frame components of a coordinate tangent vector at p, and back.
FrameVector to_frame(const Nil3Point& p, const Vec3& v);
Vec3 from_frame(const Nil3Point& p, const FrameVector& a);

// y3 = x3 + x1 x2 / 2; in a vertical plane y2 = c, (y1, y3) are Euclidean coordinates.
Vec3 to_y(const Nil3Point& p);
Nil3Point from_y(const Vec3& y);

using SurfaceSampler = std::function<Nil3Point(double, double)>;

// Finite-difference data of a parametrised surface at (u, v).
struct SurfaceFrame {
  Nil3Point point;
  Vec3 Xu, Xv;            // coordinate tangent vectors
  FrameVector normal;     // unit normal along Xu x Xv, frame components
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
  double mean_curvature = 0;
};

// h <= 0 selects the default step 1e-4 max(1, |u|, |v|).
// Throws DegeneracyError when EG - F^2 <= 1e-14.
SurfaceFrame surface_frame(const SurfaceSampler& X, double u, double v, double h = 0.0,
                           bool second_order = true);
double mean_curvature_nil3(const SurfaceSampler& X, double u, double v, double h = 0.0);

// Stereographic projection from the south pole: g = (N1 + i N2) / (1 + N3).
GaussValue gauss_value(const FrameVector& unit_normal);
GaussValue gauss_value(const SurfaceSampler& X, double u, double v, double h = 0.0);

struct GaussMapResiduals {
  GaussValue gauss;
  double harmonic_residual = 0.0;  // |(1-|g|^2) g_zzbar + 2 conj(g) g_z g_zbar|
  std::complex<double> Q_num;      // 4 g_z conj(g)_z / (1-|g|^2)^2
};

// The Gauss map is differentiated again with an outer step (default 1e-2 max(1,|u|,|v|)).
// Throws DegeneracyError where the tangent plane is vertical (|nu| <= 1e-10).
GaussMapResiduals gauss_map_and_residuals(const SurfaceSampler& X, double u, double v,
                                          double h = 0.0, double outer = 0.0);

using GraphFunction = std::function<double(double, double)>;
GraphJet graph_jet(const GraphFunction& f, double x1, double x2, double h = 1e-3);
// |(1+q^2) r - 2 p q s + (1+p^2) t|
double graph_pde_residual(const GraphFunction& f, double x1, double x2, double h = 1e-3);

}  // namespace nilcat
