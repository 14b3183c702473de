#include "nilcat/cmc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/parallel.hpp"
#include "nilcat/roots.hpp"
#include "nilcat/stencil.hpp"

namespace nilcat {

namespace {

constexpr double kMaxExponent = 700.0;

void check_v(const CmcAnnulusModel& m, double v, const char* who) {
  if (!((m.alpha() + m.alpha_star()) * std::abs(v) <= kMaxExponent)) {
    std::ostringstream msg;
    msg << who << ": (alpha + alpha_*)|v| = " << (m.alpha() + m.alpha_star()) * std::abs(v)
        << " exceeds " << kMaxExponent;
    throw RangeError(msg.str());
  }
}

}  // namespace

ConjugateProfile::ConjugateProfile(double alpha, double tol, int cells)
    : alpha_(alpha),
      alpha_star_(std::sqrt(alpha * alpha + 1.0)),
      table_(
          [as2 = alpha * alpha + 1.0](double phi) {
            const double c = std::cos(phi);
            return std::sqrt(as2 - c * c);
          },
          {}, cells, tol) {}

ConjugateProfile::Sample ConjugateProfile::eval(double u) const {
  const auto s = table_.eval(u);
  return {s.phi, s.dphi};
}

CmcAnnulusModel::CmcAnnulusModel(double alpha, double tol)
    : profile_(solve_profile(AnnulusParams::make(alpha, 0.0), tol)), conj_(alpha, tol) {}

CmcAnnulusModel build_cmc_annulus(double alpha, double tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("build_cmc_annulus: alpha must be a positive finite number");
  }
  return CmcAnnulusModel(alpha, tol);
}

double removable_eval(const CmcAnnulusModel& m, const std::function<double(double)>& F,
                      double u) {
  const double c = std::cos(m.profile().eval(u).phi);
  if (std::abs(c) > kCosCut) return F(u);
  const double U = m.U();
  const double us = U / 2 + std::round((u - U / 2) / U) * U;
  const double side = u >= us ? 1.0 : -1.0;
  // |cos phi| ~ alpha |u - us| near the zero; the nodes sit at |cos phi| ~ 1e-2, 2e-2, 3e-2.
  // The quadratic is taken in w = cos^2 phi, the variable the removable quantities are
  // smooth functions of.
  const double d = 1e-2 / m.alpha();
  double w[3], y[3];
  for (int i = 0; i < 3; ++i) {
    const double t = us + side * (i + 1) * d;
    const double ct = std::cos(m.profile().eval(t).phi);
    w[i] = ct * ct;
    y[i] = F(t);
  }
  const double x = c * c;
  return y[0] * (x - w[1]) * (x - w[2]) / ((w[0] - w[1]) * (w[0] - w[2])) +
         y[1] * (x - w[0]) * (x - w[2]) / ((w[1] - w[0]) * (w[1] - w[2])) +
         y[2] * (x - w[0]) * (x - w[1]) / ((w[2] - w[0]) * (w[2] - w[1]));
}

double f_of_u(const CmcAnnulusModel& m, double u) {
  const double a = m.alpha(), as = m.alpha_star();
  return removable_eval(
      m,
      [&](double t) {
        const double c = std::cos(m.profile().eval(t).phi);
        const double cs = std::cos(m.conjugate().eval(t).phi);
        return (a * cs - as * c) / (a * c * cs * cs);
      },
      u);
}

double tau_of_u(const CmcAnnulusModel& m, double u) {
  const double a = m.alpha();
  return removable_eval(
      m,
      [&](double t) {
        const auto s = m.profile().eval(t);
        const double c = std::cos(s.phi);
        return (s.dphi + a) * (s.dphi + a) / (c * c);
      },
      u);
}

CmcFieldSample hstar_field(const CmcAnnulusModel& m, double u, double v) {
  check_v(m, v, "hstar_field");
  const double a = m.alpha(), as = m.alpha_star();
  const auto p = m.profile().eval(u);
  const auto q = m.conjugate().eval(u);
  const double c = std::cos(p.phi), s = std::sin(p.phi);
  const double cs = std::cos(q.phi), ss = std::sin(q.phi);
  const double ch = std::cosh(a * v), sh = std::sinh(a * v);
  const double chs = std::cosh(as * v), shs = std::sinh(as * v);

  CmcFieldSample out;
  out.hstar = c * ch / (a * (p.dphi - a));
  out.H = std::complex<double>(-s * ch, c * sh) / (2.0 * (a - p.dphi));
  out.G = {ss / cs, shs / cs, chs / cs};
  out.f = f_of_u(m, u);
  // With k = f + alpha_*/alpha the block reads X2 = ch shs k - chs sh, X3 = ch chs k - shs sh;
  // splitting off k - 1 avoids cancelling two products of size e^{(alpha + alpha_*)|v|}.
  const double km1 = out.f - (a - as) / a;
  const double w = (as - a) * v;
  out.X = {ch * ss * out.f, km1 * ch * shs + std::sinh(w), km1 * ch * chs + std::cosh(w)};
  out.tau = tau_of_u(m, u);
  out.lambda = ch * ch / ((p.dphi - a) * (p.dphi - a));
  out.omega_cosh = -p.dphi / c;
  return out;
}

H2xRPoint annulus_point(const CmcAnnulusModel& m, double u, double v) {
  const auto F = hstar_field(m, u, v);
  const auto& X = F.X;
  if (!(X[2] + 1.0 > 0.0)) {
    std::ostringstream msg;
    msg << "annulus_point: X3 + 1 = " << X[2] + 1.0 << " is not positive at (" << u << ", " << v
        << ")";
    throw RangeError(msg.str());
  }
  H2xRPoint P;
  P.disk = std::complex<double>(X[0], X[1]) / (1.0 + X[2]);
  P.height = F.hstar;
  if (!(std::abs(P.disk) < 1.0 - 1e-12)) {
    std::ostringstream msg;
    msg << "annulus_point: |F*| = " << std::abs(P.disk) << " reaches the numeric boundary at ("
        << u << ", " << v << ")";
    throw RangeError(msg.str());
  }
  return P;
}

std::function<Vec3(double, double)> annulus_sampler(const CmcAnnulusModel& m) {
  return [&m](double u, double v) { return annulus_point(m, u, v).vec(); };
}

std::complex<double> disk_to_halfplane(std::complex<double> w) {
  const std::complex<double> I(0.0, 1.0);
  return (1.0 - I * w) / (w - I);
}

std::complex<double> halfplane_to_disk(std::complex<double> z) {
  const std::complex<double> I(0.0, 1.0);
  return (1.0 + I * z) / (z + I);
}

ResidualReport conjugacy_residuals(const CmcAnnulusModel& m, std::span<const double> us) {
  const double a = m.alpha(), as = m.alpha_star();
  ResidualReport rep;
  rep.record("U_star", m.conjugate().U_star() - m.U());
  auto A = [&](double u) {
    const auto p = m.profile().eval(u);
    return p.dphi / std::cos(p.phi);
  };
  auto Astar = [&](double u) { return as / std::cos(m.conjugate().eval(u).phi); };
  auto ode = [&](const std::function<double(double)>& F, double u) {
    const double x = F(u), dx = stencil::d1(F, u, 1e-4);
    const double rhs = (x * x - 1) * (x * x - a * a - 1);
    return (dx * dx - rhs) / std::max(1.0, std::abs(rhs));
  };
  for (double u : us) {
    const auto p = m.profile().eval(u);
    const auto q = m.conjugate().eval(u);
    const double c = std::cos(p.phi), cs = std::cos(q.phi);
    rep.record("cosh_omega", p.dphi * cs + as * c, u);
    rep.record("cosh_omega_sq", p.dphi * p.dphi * cs * cs - as * as * c * c, u);
    rep.record("speed_star", q.dphi * q.dphi - as * as + cs * cs, u);
    if (std::abs(c) >= 0.2) {
      rep.record("ode_A", ode(A, u), u);
      rep.record("ode_Astar", ode(Astar, u), u);
    }
  }
  return rep;
}

ResidualReport hstar_system_residuals(const CmcAnnulusModel& m, std::span<const double> us,
                                      std::span<const double> vs, double step) {
  step /= std::max(1.0, m.alpha());
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  const double a = m.alpha();
  ResidualReport rep;
  auto h = [&](double u, double v) { return hstar_field(m, u, v).hstar; };
  auto H = [&](double u, double v) { return hstar_field(m, u, v).H; };
  for (double u : us)
    for (double v : vs) {
      const auto F = hstar_field(m, u, v);
      rep.record("lambda", (F.tau + 4 * std::norm(F.H) - F.lambda) / F.lambda, u, v);
      const auto p = m.profile().eval(u);
      const double c = std::cos(p.phi);
      if (std::abs(c) < 0.1) continue;
      rep.record("hyperboloid",
                 (F.G[2] * F.G[2] - F.G[0] * F.G[0] - F.G[1] * F.G[1] - 1.0) / (F.G[2] * F.G[2]),
                 u, v);
      const double ch = std::cosh(a * v);
      const double hu = stencil::d1([&](double t) { return h(t, v); }, u, step);
      const double hv = stencil::d1([&](double t) { return h(u, t); }, v, step);
      const double huu = stencil::d2([&](double t) { return h(t, v); }, u, step);
      const double hvv = stencil::d2([&](double t) { return h(u, t); }, v, step);
      const double huv = stencil::d11(h, u, v, step);
      const cd hz = 0.5 * cd(hu, -hv);
      const cd hzz = 0.25 * cd(huu - hvv, -2 * huv);
      const double hzzb = 0.25 * (huu + hvv);
      const double t = std::tan(p.phi);
      const double rhs_zzb = (p.dphi + a) * (p.dphi + a) * ch / (4 * c * c * c);
      rep.record("hstar_zz", std::abs(hzz - (a * t * hz + ch / (4 * c))), u, v);
      rep.record("hstar_zzbar", hzzb - rhs_zzb, u, v);
      rep.record("H_is_hstar_z", std::abs(hz - F.H), u, v);
      const cd Hu = stencil::d1([&](double s) { return H(s, v); }, u, step);
      const cd Hv = stencil::d1([&](double s) { return H(u, s); }, v, step);
      const cd Hz = 0.5 * (Hu - I * Hv), Hzb = 0.5 * (Hu + I * Hv);
      rep.record("H_z", std::abs(Hz - (a * t * F.H + ch / (4 * c))), u, v);
      rep.record("H_zbar", std::abs(Hzb - rhs_zzb), u, v);
    }
  return rep;
}

namespace {

// First half-plane coordinate of the printed level curve and its log-derivative.
struct LevelCurve {
  double a, as, gamma, k;
  int sign;
  std::array<double, 2> point(double v) const {
    const double t = std::tanh(a * v);
    const double e = std::exp(as * v);
    return {-sign * gamma * e / (k + t), e / (std::cosh(a * v) * (k + t))};
  }
  double log_slope(double v) const {
    return stencil::d1([&](double s) { return std::log(std::abs(point(s)[0])); }, v, 1e-4);
  }
};

}  // namespace

HalfPlaneCurve halfplane_curve(const CmcAnnulusModel& m, int sign, double v_lo, double v_hi,
                               int n) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("halfplane_curve: sign must be +-1");
  if (n < 16) throw ResolutionError("halfplane_curve: need at least 16 samples");
  if (!(v_lo < v_hi)) throw std::invalid_argument("halfplane_curve: empty v-range");
  check_v(m, v_lo, "halfplane_curve");
  check_v(m, v_hi, "halfplane_curve");
  const double a = m.alpha(), as = m.alpha_star(), g = m.gamma();
  const LevelCurve L{a, as, g, g + as / a, sign};

  HalfPlaneCurve out;
  out.sign = sign;
  std::vector<double> D(n);
  for (int i = 0; i < n; ++i) {
    const double v = v_lo + (v_hi - v_lo) * i / (n - 1);
    out.v.push_back(v);
    const auto p = L.point(v);
    out.point.push_back(p);
    out.disk.push_back(halfplane_to_disk({p[0], p[1]}));
    D[i] = L.log_slope(v);
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (D[i] == 0.0 || (D[i] < 0) != (D[i + 1] < 0)) {
      if (D[i + 1] == 0.0) continue;
      out.critical_v.push_back(
          brent([&](double v) { return L.log_slope(v); }, out.v[i], out.v[i + 1]).root);
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    const double di = std::abs(D[i]);
    if (di <= std::abs(D[i - 1]) && di <= std::abs(D[i + 1]) && (D[i - 1] < 0) == (D[i + 1] < 0)) {
      const double v = golden_minimize([&](double s) { return std::abs(L.log_slope(s)); },
                                       out.v[i - 1], out.v[i + 1]);
      if (std::abs(L.log_slope(v)) <= 1e-9) out.critical_v.push_back(v);
    }
  }
  std::sort(out.critical_v.begin(), out.critical_v.end());
  out.strictly_monotone = out.critical_v.empty();

  if (a >= 1.0) {
    const double r = std::sqrt(a * a - 1);
    for (double t : {(-as - r) / (2 * a), (-as + r) / (2 * a)}) {
      const double v = std::atanh(t) / a;
      if (out.expected_critical_v.empty() || out.expected_critical_v.back() != v)
        out.expected_critical_v.push_back(v);
    }
  }
  return out;
}

HorocycleFit horocycle_exponent_fit(const CmcAnnulusModel& m, double v_lo, double v_hi, int n) {
  if (n < 2 || !(v_lo < v_hi)) throw std::invalid_argument("horocycle_exponent_fit: bad range");
  const auto curve = halfplane_curve(m, -1, v_lo, v_hi, std::max(n, 16));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double N = static_cast<double>(curve.point.size());
  for (const auto& p : curve.point) {
    const double x = std::log(std::abs(p[0])), y = std::log(p[1]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  HorocycleFit fit;
  fit.exponent = (N * sxy - sx * sy) / (N * sxx - sx * sx);
  fit.expected = 1.0 - m.alpha() / m.alpha_star();
  return fit;
}

double mean_curvature_h2xr(const std::function<Vec3(double, double)>& X, double u, double v,
                           double h) {
  // f(u) carries a cos^3 cancellation; a wider step keeps its roundoff out of X_uu.
  if (!(h > 0.0)) h = 10.0 * stencil::surface_step(u, v);
  const Vec3 P = X(u, v);
  const Vec3 Xu = stencil::d1([&](double a) { return X(a, v); }, u, h);
  const Vec3 Xv = stencil::d1([&](double b) { return X(u, b); }, v, h);
  const Vec3 Xuu = stencil::d2([&](double a) { return X(a, v); }, u, h);
  const Vec3 Xvv = stencil::d2([&](double b) { return X(u, b); }, v, h);
  const Vec3 Xuv = stencil::d11(X, u, v, h);

  const double r2 = P[0] * P[0] + P[1] * P[1];
  const double sigma = 2.0 / (1.0 - r2);
  const Vec3 gdiag(sigma * sigma, sigma * sigma, 1.0);
  const double dpsi[2] = {2 * P[0] / (1 - r2), 2 * P[1] / (1 - r2)};
  auto cov = [&](const Vec3& second, const Vec3& A, const Vec3& B) {
    Vec3 out = second;
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double G = (i == k) * dpsi[j] + (j == k) * dpsi[i] - (i == j) * dpsi[k];
          out[k] += G * A[i] * B[j];
        }
    return out;
  };
  auto dot = [&](const Vec3& A, const Vec3& B) { return A.dot(gdiag.cwiseProduct(B)); };
  const double E = dot(Xu, Xu), F = dot(Xu, Xv), G = dot(Xv, Xv);
  const double det = E * G - F * F;
  if (!(det > 1e-14)) {
    std::ostringstream msg;
    msg << "mean_curvature_h2xr: degenerate first fundamental form (EG-F^2=" << det << ") at ("
        << u << ", " << v << ")";
    throw DegeneracyError(msg.str());
  }
  // The normal covector is Xu x Xv; raise the index and normalize.
  Vec3 N = Xu.cross(Xv).cwiseQuotient(gdiag);
  N /= std::sqrt(dot(N, N));
  const double e = dot(cov(Xuu, Xu, Xu), N);
  const double f = dot(cov(Xuv, Xu, Xv), N);
  const double g = dot(cov(Xvv, Xv, Xv), N);
  return (e * G - 2 * f * F + g * E) / (2 * det);
}

H2xRPoint reflected_point(const CmcAnnulusModel& m, double u, double v) {
  const double U = m.U();
  const double r = u - 2 * U * std::floor((u + U / 2) / (2 * U));  // in [-U/2, 3U/2)
  if (r <= U / 2) return annulus_point(m, r, v);
  H2xRPoint p = annulus_point(m, U - r, v);
  p.height = -p.height;
  return p;
}

std::function<Vec3(double, double)> reflected_sampler(const CmcAnnulusModel& m) {
  return [&m](double u, double v) { return reflected_point(m, u, v).vec(); };
}

Mesh reflect_and_mesh(const CmcAnnulusModel& m, const CmcMeshOptions& opt) {
  if (opt.nu < 4 || opt.nu % 2 != 0) {
    throw ResolutionError("reflect_and_mesh: nu must be even and at least 4");
  }
  if (opt.nv < 2) throw ResolutionError("reflect_and_mesh: nv must be at least 2");
  if (!(opt.v_lo < opt.v_hi)) throw std::invalid_argument("reflect_and_mesh: empty v-range");
  check_v(m, opt.v_lo, "reflect_and_mesh");
  check_v(m, opt.v_hi, "reflect_and_mesh");
  const double U = m.U();
  const int nu = opt.nu, nv = opt.nv;
  std::vector<Vec3> verts(static_cast<std::size_t>(nu) * nv);
  auto body = [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / nv, j = static_cast<int>(idx) % nv;
    const double u = -U / 2 + 2 * U * i / nu;
    const double v = opt.v_lo + (opt.v_hi - opt.v_lo) * j / (nv - 1);
    verts[idx] = reflected_point(m, u, v).vec();
  };
  opt.parallel ? parallel::for_each_index(verts.size(), body)
               : parallel::for_each_index_serial(verts.size(), body);
  return cylinder_mesh(std::move(verts), nu, nv);
}

}  // namespace nilcat
