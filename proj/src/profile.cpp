#include "nilcat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nilcat/errors.hpp"
#include "nilcat/ode.hpp"
#include "nilcat/quadrature.hpp"
#include "nilcat/stencil.hpp"

namespace nilcat {

using std::numbers::pi;

double theta_plus(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("theta_plus: alpha must be positive and finite");
  }
  if (alpha > 1.0) return pi / 2;
  return 0.5 * std::acos(1.0 - 2.0 * alpha * alpha);
}

AnnulusParams AnnulusParams::make(double alpha, double theta) {
  if (!std::isfinite(theta)) throw DomainError("AnnulusParams: theta must be finite");
  AnnulusParams p;
  p.alpha = alpha;
  p.theta_plus = nilcat::theta_plus(alpha);
  p.theta = theta;
  p.C = std::sin(2.0 * theta) / (2.0 * alpha);
  const double c2 = std::cos(2.0 * theta);
  // 2 theta in pi Z exactly when sin(2 theta) vanishes.
  if (std::sin(2.0 * theta) != 0.0) {
    p.rho_minus = 2.0 * alpha * alpha / (1.0 - c2);
    p.rho_plus = 2.0 * alpha * alpha / (1.0 + c2);
  }
  p.in_omega = std::abs(theta) < p.theta_plus;
  return p;
}

double AnnulusParams::cos2t() const { return std::cos(2.0 * theta); }

double AnnulusParams::quartic(double x) const {
  const double x2 = x * x;
  return alpha * alpha + cos2t() * x2 - C * C * x2 * x2;
}

double quartic_P(const AnnulusParams& params, double x) { return params.quartic(x); }

// ---------------------------------------------------------------------------
// PhaseTable

PhaseTable::PhaseTable(Fn speed, std::vector<Fn> rates, int cells, double tol)
    : speed_(std::move(speed)), rates_(std::move(rates)), cells_(cells) {
  if (cells < 8) throw ResolutionError("PhaseTable: need at least 8 cells");
  if (rates_.size() > 2) throw std::invalid_argument("PhaseTable: at most two companions");
  if (!(tol > 0.0)) throw DomainError("PhaseTable: tol must be positive");
  h_ = pi / cells;

  // y = (u, c0, c1) as functions of s = -phi; du/ds = 1/speed, dc/ds = rate/speed.
  const auto n_rates = rates_.size();
  auto rhs = [this, n_rates](double s, const std::array<double, 3>& /*y*/) {
    const double inv = 1.0 / speed_(-s);
    std::array<double, 3> d{inv, 0.0, 0.0};
    for (std::size_t i = 0; i < n_rates; ++i) d[i + 1] = rates_[i](-s) * inv;
    return d;
  };
  DormandPrince45<3> solver(rhs, tol, 0.0);

  u_.assign(cells + 1, 0.0);
  du_.assign(cells + 1, 0.0);
  for (auto i = 0u; i < 2; ++i) {
    c_[i].assign(cells + 1, 0.0);
    dc_[i].assign(cells + 1, 0.0);
  }
  std::vector<std::array<double, 3>> mids(cells);
  std::array<double, 3> y{0.0, 0.0, 0.0};
  for (int k = 0; k <= cells; ++k) {
    const double s = k * h_;
    if (k > 0) {
      // Integrate through the midpoint so the interpolant can be audited there.
      mids[k - 1] = solver.integrate((k - 1) * h_, s - 0.5 * h_, y);
      y = solver.integrate(s - 0.5 * h_, s, mids[k - 1]);
    }
    const auto d = rhs(s, y);
    u_[k] = y[0];
    du_[k] = d[0];
    for (std::size_t i = 0; i < n_rates; ++i) {
      c_[i][k] = y[i + 1];
      dc_[i][k] = d[i + 1];
    }
  }
  // Node abscissae from per-cell Gauss-Kronrod sums, so that the in-cell refinement in
  // eval_fundamental is continuous across nodes to roundoff.
  for (int k = 0; k < cells; ++k) u_[k + 1] = local_u(k, (k + 1) * h_);
  for (int k = 0; k < cells; ++k) {
    interp_error_ = std::max(interp_error_, std::abs(hermite(u_, du_, k, 0.5) - mids[k][0]));
    for (std::size_t i = 0; i < n_rates; ++i) {
      interp_error_ =
          std::max(interp_error_, std::abs(hermite(c_[i], dc_[i], k, 0.5) - mids[k][i + 1]));
    }
  }
  if (!(interp_error_ <= 10.0 * tol) && interp_error_ > 1e-14) {
    std::ostringstream msg;
    msg << "PhaseTable: interpolation error " << interp_error_ << " exceeds 10*tol=" << 10 * tol
        << " with " << cells << " cells; raise the resolution or loosen tol";
    throw SolverError(msg.str());
  }
}

double PhaseTable::node_s(int k) const { return k * h_; }

double PhaseTable::local_u(int k, double s) const {
  return u_[k] + gauss_kronrod_15([this](double x) { return 1.0 / speed_(-x); }, k * h_, s).value;
}

double PhaseTable::hermite(const std::vector<double>& y, const std::vector<double>& dy, int k,
                           double t) const {
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y[k] + h10 * h_ * dy[k] + h01 * y[k + 1] + h11 * h_ * dy[k + 1];
}

PhaseTable::Sample PhaseTable::eval_fundamental(double r) const {
  const double U = u_.back();
  r = std::clamp(r, 0.0, U);
  int k = static_cast<int>(std::upper_bound(u_.begin(), u_.end(), r) - u_.begin()) - 1;
  k = std::clamp(k, 0, cells_ - 1);

  // Newton on the Hermite cubic of u(s) within cell k.
  const double u0 = u_[k], u1 = u_[k + 1];
  const double m0 = h_ * du_[k], m1 = h_ * du_[k + 1];
  double t = (r - u0) / (u1 - u0);
  for (int it = 0; it < 30; ++it) {
    const double t2 = t * t, t3 = t2 * t;
    const double val = (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + t) * m0 +
                       (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * m1;
    const double der = (6 * t2 - 6 * t) * u0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * u1 +
                       (3 * t2 - 2 * t) * m1;
    const double step = (val - r) / der;
    t -= step;
    if (std::abs(step) < 1e-17) break;
  }
  // Newton on the exact in-cell integral removes the cubic's curvature kinks from phi(u).
  double s = (k + std::clamp(t, 0.0, 1.0)) * h_;
  for (int it = 0; it < 3; ++it) {
    const double step = (local_u(k, s) - r) * speed_(-s);
    s = std::clamp(s - step, 0.0, pi);
    if (std::abs(step) < 1e-17) break;
  }
  t = s / h_ - k;

  Sample out;
  out.phi = -s;
  out.dphi = -speed_(out.phi);
  for (std::size_t i = 0; i < rates_.size(); ++i) out.c[i] = hermite(c_[i], dc_[i], k, t);
  return out;
}

PhaseTable::Sample PhaseTable::eval(double u) const {
  if (u < 0.0) {
    Sample s = eval(-u);
    s.phi = -s.phi;
    s.c[0] = -s.c[0];
    s.c[1] = -s.c[1];
    return s;
  }
  const double U = u_.back();
  const double k = std::floor(u / U);
  Sample s = eval_fundamental(u - k * U);
  s.phi -= k * pi;
  for (std::size_t i = 0; i < rates_.size(); ++i) s.c[i] += k * c_[i].back();
  return s;
}

// ---------------------------------------------------------------------------
// Profile

namespace {

PhaseTable make_profile_table(const AnnulusParams& p, double tol, int cells) {
  if (!p.in_omega) {
    std::ostringstream msg;
    msg << "solve_profile: (alpha=" << p.alpha << ", theta=" << p.theta
        << ") is outside Omega (|theta| < " << p.theta_plus << ")";
    throw DomainError(msg.str());
  }
  auto speed = [p](double phi) { return std::sqrt(p.quartic(std::cos(phi))); };
  auto beta_rate = [p](double phi) {
    const double c = std::cos(phi);
    return p.C * c * c;
  };
  auto g_rate = [p](double phi) {
    const double c = std::cos(phi);
    return (p.C * p.C * c * c - p.cos2t()) / (p.alpha + std::sqrt(p.quartic(c)));
  };
  return PhaseTable(speed, {beta_rate, g_rate}, cells, tol);
}

}  // namespace

Profile::Profile(const AnnulusParams& params, double tol, int cells)
    : params_(params), tol_(tol), table_(make_profile_table(params, tol, cells)) {}

double Profile::dG_of(double phi, double dphi) const {
  const double c = std::cos(phi);
  return (params_.C * params_.C * c * c - params_.cos2t()) / (params_.alpha - dphi);
}

ProfileSample Profile::eval(double u) const {
  const auto s = table_.eval(u);
  ProfileSample out;
  out.u = u;
  out.phi = s.phi;
  out.dphi = s.dphi;
  out.beta = s.c[0];
  out.G = s.c[1];
  out.dG = dG_of(s.phi, s.dphi);
  return out;
}

std::vector<ProfileSample> Profile::nodes() const {
  std::vector<ProfileSample> out;
  out.reserve(table_.cells() + 1);
  for (int k = 0; k <= table_.cells(); ++k) {
    ProfileSample s;
    s.u = table_.node_u(k);
    s.phi = -table_.node_s(k);
    s.dphi = -table_.speed(s.phi);
    s.beta = table_.node_companion(0, k);
    s.G = table_.node_companion(1, k);
    s.dG = dG_of(s.phi, s.dphi);
    out.push_back(s);
  }
  return out;
}

void Profile::write_csv(std::ostream& os) const {
  os << "u,phi,phiprime,beta,G,Gprime\n";
  os << std::setprecision(17);
  for (const auto& n : nodes()) {
    os << n.u << ',' << n.phi << ',' << n.dphi << ',' << n.beta << ',' << n.G << ',' << n.dG
       << '\n';
  }
}

Profile solve_profile(const AnnulusParams& params, double tol, int cells) {
  return Profile(params, tol, cells);
}

ProfileSample eval_profile(const Profile& profile, double u) { return profile.eval(u); }

ResidualReport identity_residuals(const Profile& profile, std::span<const double> grid,
                                  double step) {
  const auto& p = profile.params();
  const double a = p.alpha, C2 = p.C * p.C, c2t = p.cos2t();
  ResidualReport rep;
  for (const double u : grid) {
    const auto s = profile.eval(u);
    const double c = std::cos(s.phi), sn = std::sin(s.phi);
    const double ddphi = stencil::d1([&](double x) { return profile.eval(x).dphi; }, u, step);
    const double ddG = stencil::d1([&](double x) { return profile.eval(x).dG; }, u, step);
    rep.record("phiprimealpha", s.dphi + a - s.dG * c * c, u);
    rep.record("phisecond", ddphi + (c2t - 2 * C2 * c * c) * sn * c, u);
    rep.record("Gsecondcosphi", ddG * c - (2 * s.dphi * s.dG - c2t + 2 * C2 * c * c) * sn, u);
    rep.record("Gsecond", ddG - (2 * C2 * a - c2t * s.dG) / (a - s.dphi) * sn * c, u);
    rep.record("Gsecond2", ddG - (C2 + s.dG * s.dG) * sn * c, u);
  }
  return rep;
}

ResidualReport profile_law_residuals(const Profile& profile, std::span<const double> grid,
                                     double step) {
  const auto& p = profile.params();
  const double U = profile.U();
  if (!(step > 0.0)) step = 1e-3 / std::max(1.0, p.alpha);
  ResidualReport rep;
  for (const double u : grid) {
    const auto s = profile.eval(u);
    const auto t = profile.eval(u + U);
    const auto m = profile.eval(-u);
    rep.record("period_phi", t.phi - s.phi + pi, u);
    rep.record("period_beta", t.beta - s.beta - profile.betaU(), u);
    rep.record("period_G", t.G - s.G - profile.GU(), u);
    rep.record("odd_phi", m.phi + s.phi, u);
    rep.record("odd_beta", m.beta + s.beta, u);
    rep.record("odd_G", m.G + s.G, u);
    const double dphi_fd = stencil::d1([&](double x) { return profile.eval(x).phi; }, u, step);
    rep.record("eqphi", dphi_fd * dphi_fd - p.quartic(std::cos(s.phi)), u);
    rep.record("phiprime_negative", std::max(0.0, s.dphi), u);
  }
  const auto mid = profile.eval(0.5 * U);
  rep.record("mid_phi", mid.phi + pi / 2, 0.5 * U);
  rep.record("mid_beta", mid.beta - 0.5 * profile.betaU(), 0.5 * U);
  rep.record("mid_G", mid.G - 0.5 * profile.GU(), 0.5 * U);
  return rep;
}

}  // namespace nilcat
