#include <doctest.h>

#include <cmath>
#include <random>

#include "nilcat/errors.hpp"
#include "nilcat/nil3.hpp"

using namespace nilcat;

namespace {

// Metric assembled from the coframe dx1, dx2, dx3 + (x2 dx1 - x1 dx2)/2.
Mat3 coframe_metric(const Vec3& x) {
  Mat3 M;
  M << 1, 0, 0, 0, 1, 0, x[1] / 2, -x[0] / 2, 1;
  return M.transpose() * M;
}

// Koszul formula with central differences of the metric.
double koszul_fd(const Vec3& x, int k, int i, int j) {
  const double h = 1e-5;
  auto dg = [&](int l) {
    Vec3 a = x, b = x;
    a[l] += h;
    b[l] -= h;
    return Mat3((coframe_metric(a) - coframe_metric(b)) / (2 * h));
  };
  const Mat3 gi = coframe_metric(x).inverse();
  const Mat3 di = dg(i), dj = dg(j);
  double acc = 0;
  for (int l = 0; l < 3; ++l) {
    const Mat3 dl = dg(l);
    acc += 0.5 * gi(k, l) * (di(l, j) + dj(l, i) - dl(i, j));
  }
  return acc;
}

}  // namespace

TEST_CASE("metric values") {
  CHECK(metric_and_connection({0, 0, 0}).metric.isApprox(Mat3::Identity(), 0.0));
  const Mat3 g = nil3_metric({1, 0, 0});
  CHECK(g(1, 1) == 1.25);
  CHECK(g(1, 2) == -0.5);
}

TEST_CASE("Christoffel symbols against a finite-difference Koszul oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  double worst = 0;
  for (int n = 0; n < 100; ++n) {
    const Vec3 x(U(rng), U(rng), U(rng));
    const auto mc = metric_and_connection(Nil3Point::from(x));
    CHECK((mc.metric - coframe_metric(x)).cwiseAbs().maxCoeff() < 1e-15);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          worst = std::max(worst, std::abs(mc.christoffel[k](i, j) - koszul_fd(x, k, i, j)));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("frame vectors have unit length everywhere") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int n = 0; n < 50; ++n) {
    const Nil3Point p{U(rng), U(rng), U(rng)};
    const Mat3 g = nil3_metric(p);
    for (int a = 0; a < 3; ++a) {
      FrameVector e;
      (a == 0 ? e.a1 : a == 1 ? e.a2 : e.a3) = 1.0;
      const Vec3 E = from_frame(p, e);
      CHECK(std::abs(E.dot(g * E) - 1.0) < 1e-13);
      const auto back = to_frame(p, E);
      CHECK(std::abs(back.norm2() - 1.0) < 1e-13);
    }
  }
}

TEST_CASE("y coordinates") {
  CHECK(to_y({1, 2, 3}) == Vec3(1, 2, 4));
  CHECK(to_y({0, 0.3, -2}) == Vec3(0, 0.3, -2));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-10, 10);
  for (int n = 0; n < 100; ++n) {
    const Nil3Point p{U(rng), U(rng), U(rng)};
    const auto q = from_y(to_y(p));
    CHECK(std::abs(q.x3 - p.x3) <= 4e-15 * std::max(1.0, std::abs(p.x1 * p.x2)));
    CHECK(q.x1 == p.x1);
    CHECK(q.x2 == p.x2);
  }
}

TEST_CASE("mean curvature of reference surfaces") {
  SurfaceSampler vplane = [](double u, double v) { return Nil3Point{u, 0.0, v}; };
  SurfaceSampler hplane = [](double u, double v) { return Nil3Point{u, v, 0.0}; };
  SurfaceSampler oblique = [](double u, double v) {
    return Nil3Point{0.6 * u + 1.0, 0.8 * u - 2.0, v};
  };
  SurfaceSampler sphere = [](double u, double v) {
    return Nil3Point{std::cos(u) * std::cos(v), std::sin(u) * std::cos(v), std::sin(v)};
  };
  for (double u : {-1.0, 0.0, 0.7})
    for (double v : {-0.5, 0.2}) {
      CHECK(std::abs(mean_curvature_nil3(vplane, u, v)) < 1e-8);
      CHECK(std::abs(mean_curvature_nil3(oblique, u, v)) < 1e-6);  // roundoff of the 5-point stencil
      CHECK(std::abs(mean_curvature_nil3(hplane, u, v)) < 1e-8);
      CHECK(std::abs(mean_curvature_nil3(sphere, u, v)) > 0.1);
    }
  CHECK(std::abs(mean_curvature_nil3(hplane, 0, 0)) < 1e-12);
  SurfaceSampler degenerate = [](double u, double) { return Nil3Point{u, 0, 0}; };
  CHECK_THROWS_AS(mean_curvature_nil3(degenerate, 0.1, 0.1), DegeneracyError);
}

TEST_CASE("Gauss value conventions") {
  const auto up = gauss_value(FrameVector{0, 0, 1});
  CHECK(up.g == std::complex<double>(0, 0));
  CHECK(up.nu == 1.0);
  for (double a : {0.1, 0.9, 2.0}) {
    const auto n = Vec3(std::cos(a), std::sin(a) * 0.3, std::sin(a)).normalized();
    const auto gv = gauss_value(FrameVector{n[0], n[1], n[2]});
    CHECK(std::abs(gv.nu - (1 - std::norm(gv.g)) / (1 + std::norm(gv.g))) < 1e-14);
  }
  const auto side = gauss_value(FrameVector{1, 0, 0});
  CHECK(std::abs(std::abs(side.g) - 1.0) < 1e-15);
  SurfaceSampler vplane = [](double u, double v) { return Nil3Point{u, 0.0, v}; };
  CHECK_THROWS_AS(gauss_map_and_residuals(vplane, 0.2, 0.3), DegeneracyError);
}

TEST_CASE("graph equation on reference graphs") {
  CHECK(graph_pde_residual([](double, double) { return 0.0; }, 0.3, -0.4) == 0.0);
  CHECK(graph_pde_residual([](double a, double b) { return a * b / 2; }, 0.3, -0.4) < 1e-9);
  const auto j = graph_jet([](double a, double b) { return a * b / 2; }, 0.3, -0.4);
  CHECK(std::abs(j.q) < 1e-12);
  CHECK(std::abs(j.s - 0.5) < 1e-9);
  CHECK(graph_pde_residual([](double a, double b) { return a * a + b * b; }, 0.3, 0.2) > 0.1);
}
