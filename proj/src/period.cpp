#include "nilcat/period.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include "nilcat/csv.hpp"
#include "nilcat/errors.hpp"
#include "nilcat/parallel.hpp"
#include "nilcat/quadrature.hpp"
#include "nilcat/roots.hpp"

namespace nilcat {

using std::numbers::pi;

namespace {

void require_omega(const AnnulusParams& p, const char* who) {
  if (!p.in_omega) {
    std::ostringstream msg;
    msg << who << ": (alpha=" << p.alpha << ", theta=" << p.theta << ") is outside Omega";
    throw DomainError(msg.str());
  }
}

struct Integrated {
  double value, error;
  bool converged;
};

Integrated integrate_t(const std::function<double(double)>& f, double tol) {
  const auto r = integrate_adaptive(f, -pi / 2, pi / 2, tol, 0.0, 4000);
  return {r.value, r.error_estimate, r.converged};
}

double bracket_hi(double alpha) { return std::min(theta_plus(alpha) - 1e-9, pi / 4); }

}  // namespace

double L_integrand_t(const AnnulusParams& p, double t) {
  const double x = std::sin(t), x2 = x * x;
  const double C2 = p.C * p.C;
  const double sp = std::sqrt(p.quartic(x));
  const double num = 2 * p.alpha * C2 * x2 - p.alpha * p.cos2t() + C2 * x2 * sp;
  return num / (sp * (p.alpha + sp));
}

PeriodIntegrals L_integral(const AnnulusParams& p, double tol, bool split) {
  require_omega(p, "L_integral");
  PeriodIntegrals out;
  const auto L = integrate_t([&](double t) { return L_integrand_t(p, t); }, tol);
  out.L = L.value;
  out.quadrature_error_estimate = L.error;
  out.converged = L.converged;
  if (split) {
    const double C2 = p.C * p.C, a = p.alpha;
    const auto L1 = integrate_t(
        [&](double t) {
          const double c = std::cos(t);
          const double sp = std::sqrt(p.quartic(std::sin(t)));
          return -2 * a * C2 * c * c / ((a + sp) * sp);
        },
        tol);
    const auto L2 = integrate_t(
        [&](double t) {
          const double x = std::sin(t);
          const double sp = std::sqrt(p.quartic(x));
          return (2 * a * C2 - a * p.cos2t() + C2 * x * x * sp) / (sp * (a + sp));
        },
        tol);
    out.L1 = L1.value;
    out.L2 = L2.value;
    out.quadrature_error_estimate += L1.error + L2.error;
    out.converged = out.converged && L1.converged && L2.converged;
  }
  return out;
}

ThetaTilde find_theta_tilde(double alpha, double tol) {
  const double hi = bracket_hi(alpha);
  auto L = [&](double th) { return L_integral(AnnulusParams::make(alpha, th), tol).L; };
  const double f_lo = L(0.0), f_hi = L(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    std::ostringstream msg;
    msg << "find_theta_tilde: bracket [0, " << hi << "] has L = (" << f_lo << ", " << f_hi
        << ") at alpha=" << alpha << "; expected a negative-to-positive sign change";
    throw SolverError(msg.str());
  }
  const auto r = bisect(L, 0.0, hi);
  return {alpha, r.root, r.value, r.iterations};
}

PeriodIntegrals appendix_I_decomposition(double alpha, double theta, double tol) {
  const auto p = AnnulusParams::make(alpha, theta);
  require_omega(p, "appendix_I_decomposition");
  const double a = alpha, C2 = p.C * p.C;
  auto sqP = [&](double t) { return std::sqrt(p.quartic(std::sin(t))); };
  const auto I1 = integrate_t(
      [&](double t) {
        const double s = std::sin(t), sp = sqP(t);
        return 2 * a * a * C2 * s * s / (sp * (a + sp));
      },
      tol);
  const auto I2 = integrate_t(
      [&](double t) {
        const double sp = sqP(t);
        return a * a / (sp * (a + sp));
      },
      tol);
  const auto I3 = integrate_t(
      [&](double t) {
        const double s = std::sin(t);
        return a * C2 * s * s / (a + sqP(t));
      },
      tol);
  PeriodIntegrals out = L_integral(p, tol);
  out.I1 = I1.value;
  out.I2 = I2.value;
  out.I3 = I3.value;
  out.quadrature_error_estimate += I1.error + I2.error + I3.error;
  out.converged = out.converged && I1.converged && I2.converged && I3.converged;
  return out;
}

double I2_lower_bound(double alpha) {
  const double r = std::sqrt(alpha * alpha + 1);
  return pi * alpha * alpha / (r * (alpha + r));
}

double I1_upper_bound(double alpha) {
  if (!(alpha > 1)) throw DomainError("I1_upper_bound: needs alpha > 1");
  const double r = std::sqrt(alpha * alpha - 1);
  return pi / (4 * r * (alpha + r));
}

double I3_upper_bound(double alpha) {
  if (!(alpha > 1)) throw DomainError("I3_upper_bound: needs alpha > 1");
  const double r = std::sqrt(alpha * alpha - 1);
  return pi / (8 * alpha * (alpha + r));
}

std::vector<std::pair<double, double>> L_theta_ladder(double alpha, int n, double tol) {
  const double hi = bracket_hi(alpha);
  std::vector<std::pair<double, double>> out;
  for (int k = 1; k <= n; ++k) {
    const double th = hi * k / (n + 1);
    out.emplace_back(th, L_integral(AnnulusParams::make(alpha, th), tol).L);
  }
  return out;
}

std::vector<SweepRow> period_sweep(std::span<const double> alphas, double tol) {
  std::vector<SweepRow> rows(alphas.size());
  std::vector<std::exception_ptr> errors(alphas.size());
#pragma omp parallel for schedule(dynamic) num_threads(parallel::max_threads())
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    try {
      const auto root = find_theta_tilde(alphas[i], tol);
      const auto I = appendix_I_decomposition(alphas[i], root.theta, tol);
      rows[i] = {alphas[i], root.theta, root.L, *I.I1, *I.I2, *I.I3};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "alpha,theta_tilde,L_residual,I1,I2,I3\n";
  for (const auto& r : rows) {
    os << csv::num(r.alpha) << ',' << csv::num(r.theta_tilde) << ',' << csv::num(r.L_residual)
       << ',' << csv::num(r.I1) << ',' << csv::num(r.I2) << ',' << csv::num(r.I3) << '\n';
  }
}

}  // namespace nilcat
