#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nilcat/catenoid.hpp"
#include "nilcat/errors.hpp"

using namespace nilcat;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

const CatenoidModel& cat1() {
  static const CatenoidModel m = build_catenoid(1.0);
  return m;
}

const CatenoidModel& cat2() {
  static const CatenoidModel m = build_catenoid(2.0);
  return m;
}

std::vector<double> lin(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

cd closed_form_g(const CatenoidModel& m, double u, double v) {
  const auto s = m.profile().eval(u);
  const double A = m.alpha() * v + s.beta;
  return cd(std::sin(s.phi), std::sinh(A)) / (std::cos(s.phi) + std::cosh(A));
}

}  // namespace

TEST_CASE("build_catenoid closes the period") {
  const auto& m = cat1();
  CHECK(std::abs(m.period_identity()) <= 1e-9);
  CHECK(m.V() == -m.profile().betaU() / m.alpha());
  CHECK(m.Z() == 2.0 * cd(m.U(), m.V()));
  CHECK_THROWS_AS(build_catenoid(0.0), DomainError);
}

TEST_CASE("immersion at the origin") {
  const auto& m = cat1();
  const auto p = immersion_point(m, 0, 0).point;
  const double dG0 = m.profile().eval(0).dG;
  CHECK(p.x1 == 0.0);
  CHECK(p.x2 == 0.0);
  CHECK(std::abs(p.x3 - (m.C() / m.alpha()) * (dG0 / m.alpha() - 1)) < 1e-15);
  CHECK_THROWS_AS(immersion_point(m, 0, 800), RangeError);
}

TEST_CASE("period closure and its negative control") {
  const auto& m = cat1();
  const auto us = lin(-m.U(), m.U(), 20), vs = lin(-2, 2, 20);
  CHECK(period_closure_residual(m, us, vs) <= 1e-8);
  const double zero[] = {0.0};
  const auto Z = m.Z();
  const Vec3 d = immersion_point(m, Z.real(), Z.imag()).point.vec() - immersion_point(m, 0, 0).point.vec();
  CHECK(period_closure_residual(m, zero, zero) == d.cwiseAbs().maxCoeff());

  const CatenoidModel open(AnnulusParams::make(1.0, m.theta() / 2));
  CHECK(period_closure_residual(open, us, vs) > 1e-3);
}

TEST_CASE("rotation symmetries") {
  for (const auto* m : {&cat1(), &cat2()}) {
    const auto rep = symmetry_residuals(*m, lin(-m->U(), m->U(), 20), lin(-2, 2, 20));
    for (const char* k : {"rot_x1", "rot_x2", "rot_x3"}) CHECK(rep.max_abs(k) <= 1e-9);
  }
}

TEST_CASE("conformal minimal immersion") {
  const auto& m = cat1();
  const auto S = catenoid_sampler(m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> R(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const double u = R(rng) * m.U(), v = 2 * R(rng);
    const auto fr = surface_frame(S, u, v);
    const double lam = immersion_point(m, u, v).lambda;
    CHECK(std::abs(fr.E - lam) <= 1e-5 * lam);
    CHECK(std::abs(fr.G - lam) <= 1e-5 * lam);
    CHECK(std::abs(fr.F) <= 1e-5 * lam);
    CHECK(std::abs(fr.mean_curvature) <= 1e-4);
  }
  CHECK(std::abs(mean_curvature_nil3(S, 0.3, 0.7)) <= 1e-4);
}

TEST_CASE("Gauss map: closed form, Hopf differential and harmonicity") {
  const auto& m = cat1();
  const auto S = catenoid_sampler(m);
  const cd Q = 0.25 * std::exp(cd(0, -2 * m.theta()));
  for (double u : lin(-0.4 * m.U(), 0.4 * m.U(), 7))
    for (double v : lin(-2, 2, 5)) {
      const auto r = gauss_map_and_residuals(S, u, v);
      CHECK(std::abs(r.gauss.g - closed_form_g(m, u, v)) < 1e-9);
      CHECK(std::abs(r.Q_num - Q) <= 1e-6);
      CHECK(r.harmonic_residual <= 1e-6);
      CHECK(r.gauss.nu > 0.0);
    }
  const auto g0 = gauss_value(S, 0, 0);
  CHECK(std::abs(g0.g) < 1e-12);
  CHECK(std::abs(g0.nu - 1) < 1e-12);
  for (double v : {-1.0, 0.0, 0.8}) CHECK(std::abs(std::abs(gauss_value(S, m.U() / 2, v).g) - 1) < 1e-8);
}

TEST_CASE("sections are closed convex curves") {
  for (const auto* m : {&cat1(), &cat2()})
    for (double c : {-1.0, 0.0, 1.0}) {
      const auto sc = section_curve(*m, c, 512);
      INFO("alpha=" << m->alpha() << " c=" << c);
      CHECK(sc.closure_gap <= 1e-8);
      CHECK(sc.antipodal_gap <= 1e-8);
      CHECK(sc.y2_deviation <= 1e-12);
      CHECK(sc.min_curvature > 0.0);
      CHECK(std::abs(sc.turning_number - 1.0) < 1e-9);
      CHECK(sc.slope_residual <= 1e-6);
      CHECK(sc.y1_increasing_on_half);
    }
  CHECK_THROWS_AS(section_curve(cat1(), 0.0, 8), ResolutionError);
}

TEST_CASE("remarkable curves match the sampler") {
  for (const auto* m : {&cat1(), &cat2()}) {
    const auto rc = remarkable_curves(*m);
    for (double v : {-1.0, 0.0, 0.5}) {
      const Vec3 b = to_y(immersion_point(*m, 0, v).point);
      const auto bb = rc.bottom(b[1]);
      CHECK(std::abs(bb[0] - b[0]) < 1e-12);
      CHECK(std::abs(bb[1] - b[2]) < 1e-12);
      const Vec3 w = to_y(immersion_point(*m, m->U() / 2, v).point);
      const auto ww = rc.vertical(w[1]);
      CHECK(std::abs(ww[0] - w[0]) < 1e-11);
      CHECK(std::abs(ww[1] - w[2]) < 1e-11);
    }
    CHECK(rc.vertical(0)[0] == m->C() / m->alpha());
    CHECK(rc.vertical(0)[1] == 0.0);
    CHECK(rc.projection_halfwidth(0) == m->C() / m->alpha());
  }
  const auto& m = cat1();
  const double s = std::sqrt(1 + m.params().cos2t() - m.C() * m.C());
  CHECK(std::abs(remarkable_curves(m).bottom(0)[1] + m.C() * s / m.alpha()) < 1e-15);
  CHECK(remarkable_curves(m).bottom(0)[0] == 0.0);
}

TEST_CASE("Gauss curvature") {
  const auto& m = cat1();
  const double a = m.alpha(), c2 = m.params().cos2t();
  const auto k0 = gauss_curvature_K(m, 0, 0);
  CHECK(std::abs(k0.K_lambda - (-2 * a * a - c2 + a * std::sqrt(a * a + c2 - m.C() * m.C()))) < 1e-12);
  CHECK(k0.K < 0);
  const double vbig = 6.0;
  const auto kv = gauss_curvature_K(m, m.U() / 2, vbig);
  const double A = a * vbig + m.profile().eval(m.U() / 2).beta;
  CHECK(std::abs(kv.K_lambda - (-a * a / std::pow(std::cosh(A), 2) + c2 / 2)) < 1e-9);
  CHECK(kv.K > 0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> R(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const double u = R(rng) * m.U(), v = 2 * R(rng);
    const auto K = gauss_curvature_K(m, u, v);
    CHECK(std::abs(K.K_lambda - curvature_K_lambda_fd(m, u, v)) / K.lambda <= 1e-5);
  }
}

TEST_CASE("limit towards the punctured vertical plane") {
  const auto m25 = build_catenoid(25.0), m50 = build_catenoid(50.0), m100 = build_catenoid(100.0);
  double worst50 = 0, worst100 = 0;
  for (double uh : lin(-1, 1, 5))
    for (double vh : lin(-1, 1, 5)) {
      const auto d50 = limit_deviation(m50, uh, vh), d100 = limit_deviation(m100, uh, vh);
      for (int i = 0; i < 3; ++i) {
        worst50 = std::max(worst50, d50[i]);
        worst100 = std::max(worst100, d100[i]);
      }
    }
  CHECK(worst50 <= 1e-2);
  CHECK(worst100 < worst50);
  const auto a = limit_deviation(m25, 0.5, 0), b = limit_deviation(m100, 0.5, 0);
  for (int i = 0; i < 3; ++i) CHECK(b[i] < a[i]);
}

TEST_CASE("waist extent shrinks") {
  const double w1 = waist_extent(cat1()), w10 = waist_extent(10.0), w100 = waist_extent(100.0);
  CHECK(w10 < w1);
  CHECK(w100 < w10);
  CHECK(w1 >= cat1().C() / cat1().alpha());
  CHECK(w100 <= 6e-5);  // recorded from direct evaluation: 5.0e-5
}

TEST_CASE("catenoid mesh") {
  const auto& m = cat1();
  const auto mesh = mesh_catenoid(m, {-3, 3, 64, 64, true});
  CHECK(mesh.vertices.size() == 64u * 64u);
  CHECK(euler_characteristic(mesh) == 0);
  CHECK(boundary_loop_count(mesh) == 2);
  CHECK(max_edge_valence(mesh) == 2);
  CHECK(projection_bound_excess(m, mesh) <= 1e-9);
  const auto spot = section_membership_spot_check(m, mesh, 200);
  CHECK(spot.max_distance <= spot.chord_tolerance);
  CHECK(spot.axis_enclosed_once);

  const auto serial = mesh_catenoid(m, {-3, 3, 64, 64, false});
  CHECK(serial.vertices == mesh.vertices);

  // The wrap weld: column nu would coincide with column 0.
  const double u_end = m.U(), w = 0.7;
  const Vec3 last = immersion_point(m, u_end, w + m.V()).point.vec();
  const Vec3 first = immersion_point(m, -m.U(), w - m.V()).point.vec();
  CHECK((last - first).norm() < 1e-12);

  CHECK_THROWS_AS(mesh_catenoid(m, {-3, 3, 8, 64, true}), ResolutionError);
  CHECK_THROWS_AS(mesh_catenoid(m, {-800, 800, 64, 64, true}), RangeError);
}

TEST_CASE("local graph near the bottom of the waist solves the graph equation") {
  const auto& m = cat1();
  const auto f = catenoid_local_graph(m, 0, 0);
  const auto p = immersion_point(m, 0, 0).point;
  CHECK(std::abs(f(p.x1, p.x2) - p.x3) < 1e-14);
  for (double dx : {-0.02, 0.0, 0.03})
    for (double dy : {-0.02, 0.0, 0.01}) CHECK(graph_pde_residual(f, p.x1 + dx, p.x2 + dy) <= 1e-4);
}
