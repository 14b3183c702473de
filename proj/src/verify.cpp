#include "nilcat/verify.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>
#include <vector>

#include "nilcat/catenoid.hpp"
#include "nilcat/cmc.hpp"
#include "nilcat/helicoid.hpp"
#include "nilcat/period.hpp"

namespace nilcat {

namespace {

std::vector<double> lin(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

struct Recorder {
  ResidualReport& rep;
  void value(const std::string& name, double x, double threshold, double u = std::nan(""),
             double v = std::nan("")) {
    rep.record(name, x, u, v);
    rep.set_threshold(name, threshold);
  }
  void flag(const std::string& name, bool holds) { value(name, holds ? 0.0 : 1.0, 0.0); }
  void merge(const ResidualReport& r, const std::string& prefix, double threshold) {
    for (const auto& [k, e] : r.entries()) {
      rep.record(prefix + k, e.max_abs, e.at_u, e.at_v);
      rep.set_threshold(prefix + k, threshold);
    }
  }
};

void verify_profile_period(Recorder& R, double alpha, double tol) {
  const auto tt = find_theta_tilde(alpha);
  R.value("period.L_residual", tt.L, 1e-10);
  R.flag("period.L_at_theta0_negative", L_integral(AnnulusParams::make(alpha, 0.0)).L < 0.0);
  const auto ladder = L_theta_ladder(alpha, 16);
  bool inc = true;
  for (std::size_t i = 1; i < ladder.size(); ++i) inc &= ladder[i].second > ladder[i - 1].second;
  R.flag("period.ladder_increasing", inc);
  const auto I = appendix_I_decomposition(alpha, tt.theta);
  R.value("period.decomposition", *I.I1 - std::cos(2 * tt.theta) * *I.I2 + *I.I3, 1e-8);
  R.flag("period.I2_lower_bound", *I.I2 >= I2_lower_bound(alpha));

  const auto p = solve_profile(AnnulusParams::make(alpha, tt.theta), tol);
  const auto g = lin(-3 * p.U(), 3 * p.U(), 1000);
  R.merge(profile_law_residuals(p, g), "profile.", 1e-9);
  R.merge(identity_residuals(p, g), "profile.identity_", 1e-8);
}

void verify_catenoid(Recorder& R, double alpha, double tol) {
  // The surfaces vary on the scale 1/alpha in (u, v) and 1/alpha^2 in space.
  const auto m = build_catenoid(alpha, tol);
  const double U = m.U(), sc = std::max(1.0, alpha);
  const auto g20 = lin(-U, U, 20), v20 = lin(-2 / sc, 2 / sc, 20);
  R.value("catenoid.period_closure", period_closure_residual(m, g20, v20), 1e-8);
  R.merge(symmetry_residuals(m, lin(-U, U, 9), lin(-1.5 / sc, 1.5 / sc, 7)), "catenoid.symmetry_",
          1e-9);

  const auto S = catenoid_sampler(m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> D(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const double u = D(rng) * U, v = 2 * D(rng) / sc;
    const auto fr = surface_frame(S, u, v, 1e-4 / sc);
    const double lam = immersion_point(m, u, v).lambda;
    R.value("catenoid.conformal_E", (fr.E - lam) / lam, 1e-5, u, v);
    R.value("catenoid.conformal_G", (fr.G - lam) / lam, 1e-5, u, v);
    R.value("catenoid.conformal_F", fr.F / lam, 1e-5, u, v);
    R.value("catenoid.mean_curvature", fr.mean_curvature, 1e-4, u, v);
  }
  const std::complex<double> Q = 0.25 * std::exp(std::complex<double>(0, -2 * m.theta()));
  for (double u : lin(-0.4 * U, 0.4 * U, 7))
    for (double v : lin(-2 / sc, 2 / sc, 5)) {
      const auto r = gauss_map_and_residuals(S, u, v, 1e-3 / sc, 1e-2 / sc);
      R.value("catenoid.hopf", std::abs(r.Q_num - Q), 1e-6, u, v);
      R.value("catenoid.harmonic", r.harmonic_residual, 1e-6, u, v);
    }

  for (int k : {-1, 0, 1}) {
    const auto sec = section_curve(m, k / (sc * sc), 512);
    const std::string p = "section.c=" + std::to_string(k) + ".";
    R.value(p + "closure_gap", sec.closure_gap, 1e-8);
    R.value(p + "slope", sec.slope_residual, 1e-6);
    R.value(p + "turning_number", sec.turning_number - 1.0, 1e-6);
    R.flag(p + "curvature_positive", sec.min_curvature > 0.0);
  }

  const auto mesh = mesh_catenoid(m, {-3 / sc, 3 / sc, 64, 64, true});
  R.flag("catenoid.mesh_euler_zero", euler_characteristic(mesh) == 0);
  R.value("catenoid.mesh_projection_excess", std::max(0.0, projection_bound_excess(m, mesh)), 1e-9);

  const auto f = catenoid_local_graph(m, 0, 0);
  const auto p0 = immersion_point(m, 0, 0).point;
  const double s2 = sc * sc;
  for (double dx : {-0.02 / s2, 0.0, 0.03 / s2})
    for (double dy : {-0.02 / s2, 0.0, 0.01 / s2})
      R.value("catenoid.graph_pde", graph_pde_residual(f, p0.x1 + dx, p0.x2 + dy, 1e-3 / s2), 1e-4,
              dx, dy);
}

void verify_limits(Recorder& R) {
  double dev50 = 0, dev100 = 0;
  const CatenoidModel m50 = build_catenoid(50.0), m100 = build_catenoid(100.0);
  for (double uh : lin(-1, 1, 5))
    for (double vh : lin(-1, 1, 5)) {
      for (double d : limit_deviation(m50, uh, vh)) dev50 = std::max(dev50, std::abs(d));
      for (double d : limit_deviation(m100, uh, vh)) dev100 = std::max(dev100, std::abs(d));
    }
  R.value("limit.deviation_alpha50", dev50, 1e-2);
  R.flag("limit.deviation_decreases", dev100 < dev50);
  const double w1 = waist_extent(1.0), w10 = waist_extent(10.0), w100 = waist_extent(m100);
  R.flag("limit.waist_decreasing", w10 < w1 && w100 < w10);
}

void verify_helicoid(Recorder& R, double alpha, double tol) {
  const HelicoidModel h(alpha, tol);
  for (double c : {-1.5, -0.4, 0.0, 0.8, 2.2}) {
    const auto fit = ruling_residual(h, c, 41);
    R.value("helicoid.ruling_line_fit", fit.residual, 1e-9, fit.u_c, c);
    R.value("helicoid.y2_independent_of_v", fit.y2_spread, 0.0, fit.u_c, c);
  }
  const double U = h.U(), sc = std::max(1.0, alpha);
  R.merge(helicoid_period_residuals(h, lin(-U, U, 7), lin(-1.5 / sc, 1.5 / sc, 5)), "helicoid.",
          1e-9);
  const auto S = helicoid_sampler(h);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> D(-1, 1);
  for (int k = 0; k < 100; ++k) {
    const double u = D(rng) * U, v = 2 * D(rng) / sc;
    R.value("helicoid.mean_curvature", mean_curvature_nil3(S, u, v, 1e-4 / sc), 1e-4, u, v);
  }
}

void verify_cmc(Recorder& R, double alpha, double tol) {
  const auto m = build_cmc_annulus(alpha, tol);
  const double U = m.U(), as = m.alpha_star(), sc = std::max(1.0, alpha);
  R.value("cmc.alpha_star_sq", as * as - alpha * alpha - 1.0, 4e-16 * as * as);
  auto conj = conjugacy_residuals(m, lin(-1.5 * U, 1.5 * U, 301));
  R.value("cmc.U_star", conj.max_abs("U_star"), 1e-9);
  R.value("cmc.cosh_omega", conj.max_abs("cosh_omega"), 1e-8);
  R.value("cmc.cosh_omega_sq", conj.max_abs("cosh_omega_sq"), 1e-8);
  R.value("cmc.ode_A", conj.max_abs("ode_A"), 1e-8);
  R.value("cmc.ode_Astar", conj.max_abs("ode_Astar"), 1e-8);

  const auto sys = hstar_system_residuals(m, lin(-U / 2, U / 2, 41), lin(-1 / sc, 1 / sc, 9));
  for (const char* k : {"hstar_zz", "hstar_zzbar", "H_is_hstar_z", "H_z", "H_zbar"})
    R.value(std::string("cmc.") + k, sys.max_abs(k), 1e-6);
  R.value("cmc.lambda", sys.max_abs("lambda"), 1e-8);
  R.value("cmc.hyperboloid", sys.max_abs("hyperboloid"), 1e-10);
  R.value("cmc.f_endpoint_plus", f_of_u(m, U / 2) - m.gamma(), 1e-4);
  R.value("cmc.f_endpoint_minus", f_of_u(m, -U / 2) - m.gamma(), 1e-4);

  const auto S = annulus_sampler(m), Sr = reflected_sampler(m);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> D(-1, 1);
  bool inside = true;
  for (int k = 0; k < 100; ++k) {
    const double u = 0.45 * U * D(rng), v = D(rng) / sc;
    R.value("cmc.mean_curvature", mean_curvature_h2xr(S, u, v) - 0.5, 1e-4, u, v);
    R.value("cmc.reflected_mean_curvature", mean_curvature_h2xr(Sr, U - u, v) - 0.5,
            1e-4, U - u, v);
    const auto F = hstar_field(m, u, v);
    inside &= F.X[2] + 1 > 0 && std::abs(annulus_point(m, u, v).disk) < 1;
  }
  R.flag("cmc.disk_and_X3", inside);

  // The far critical point sits near alpha v = -ln(8 alpha^2)/2.
  const double vr = (3.0 + std::log1p(alpha * alpha)) / alpha;
  const auto curve = halfplane_curve(m, -1, -vr, vr, 801);
  if (alpha > 1.0) {
    const bool two = curve.critical_v.size() == 2 && curve.expected_critical_v.size() == 2;
    R.flag("cmc.critical_point_count", two);
    if (two)
      for (int i = 0; i < 2; ++i)
        R.value("cmc.critical_point_location",
                curve.critical_v[i] - curve.expected_critical_v[i], 1e-8);
  } else if (alpha == 1.0) {
    R.flag("cmc.critical_point_count", curve.critical_v.size() == 1);
  } else {
    R.flag("cmc.critical_point_count", curve.critical_v.empty() && curve.strictly_monotone);
  }

  const auto mesh = reflect_and_mesh(m, {.v_lo = -1.5 / alpha, .v_hi = 1.5 / alpha});
  R.flag("cmc.mesh_euler_zero", euler_characteristic(mesh) == 0);
}

}  // namespace

ResidualReport run_verify(const VerifyOptions& opt) {
  ResidualReport rep;
  Recorder R{rep};
  verify_profile_period(R, opt.alpha, opt.tol);
  verify_catenoid(R, opt.alpha, opt.tol);
  verify_helicoid(R, opt.alpha, opt.tol);
  verify_cmc(R, opt.alpha, opt.tol);
  if (opt.limits) verify_limits(R);
  return rep;
}

std::string verify_json(const VerifyOptions& opt, const ResidualReport& report) {
  nlohmann::ordered_json j;
  j["alpha"] = opt.alpha;
  j["tol"] = opt.tol;
  j["pass"] = report.all_pass();
  j["failed"] = nlohmann::ordered_json::array();
  for (const auto& [k, e] : report.entries())
    if (!e.pass()) j["failed"].push_back(k);
  j["checks"] = nlohmann::ordered_json::parse(report.to_json());
  return j.dump(2) + "\n";
}

}  // namespace nilcat
