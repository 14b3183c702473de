#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "nilcat/residual.hpp"

namespace nilcat {

// One member (alpha, theta) of the constant-Q harmonic map family.
struct AnnulusParams {
  double alpha = 1.0;
  double theta = 0.0;
  double C = 0.0;           // sin(2 theta) / (2 alpha)
  double theta_plus = 0.0;  // half-width of the admissible theta interval
  std::optional<double> rho_minus;  // roots of the factored quartic, when 2 theta is not in pi Z
  std::optional<double> rho_plus;
  bool in_omega = false;

  // Throws DomainError for alpha <= 0 or non-finite input.
  static AnnulusParams make(double alpha, double theta);

  double cos2t() const;
  // P(x) = alpha^2 + cos(2 theta) x^2 - C^2 x^4.
  double quartic(double x) const;
};

double theta_plus(double alpha);
double quartic_P(const AnnulusParams& params, double x);

// Phase phi(u) solving phi' = -speed(phi) with phi(0) = 0, where speed is a positive,
// even, pi-periodic function of phi. Optional companions c_i(u) with c_i' = rate_i(phi),
// c_i(0) = 0, are integrated alongside. Everything is tabulated on a uniform grid
// s = -phi in [0, pi] and evaluated through cubic Hermite interpolation with exact
// s-derivatives; u -> s is inverted by Newton iteration on the interpolant, polished
// against the exact in-cell integral of 1/speed.
class PhaseTable {
 public:
  using Fn = std::function<double(double)>;

  struct Sample {
    double phi = 0.0;
    double dphi = 0.0;
    double c[2] = {0.0, 0.0};
  };

  PhaseTable(Fn speed, std::vector<Fn> rates, int cells, double tol);

  double half_period() const { return u_.back(); }
  double companion_period(int i) const { return c_[i].back(); }
  int cells() const { return cells_; }
  // Largest mismatch between the interpolant and independently integrated cell midpoints.
  double interpolation_error() const { return interp_error_; }
  double speed(double phi) const { return speed_(phi); }

  // Quasi-periodic, odd extension to the whole line.
  Sample eval(double u) const;
  // Node data (s_k, u_k, c_k) for export.
  double node_u(int k) const { return u_[k]; }
  double node_s(int k) const;
  double node_companion(int i, int k) const { return c_[i][k]; }

 private:
  Sample eval_fundamental(double r) const;
  double local_u(int k, double s) const;
  double hermite(const std::vector<double>& y, const std::vector<double>& dy, int k,
                 double t) const;

  Fn speed_;
  std::vector<Fn> rates_;
  int cells_;
  double h_;
  std::vector<double> u_, du_;
  std::vector<double> c_[2], dc_[2];
  double interp_error_ = 0.0;
};

struct ProfileSample {
  double u = 0.0;
  double phi = 0.0;
  double dphi = 0.0;
  double beta = 0.0;
  double G = 0.0;
  double dG = 0.0;
};

// phi, beta, G for one (alpha, theta) in Omega, with the quasi-period data.
class Profile {
 public:
  Profile(const AnnulusParams& params, double tol, int cells);

  const AnnulusParams& params() const { return params_; }
  double U() const { return table_.half_period(); }
  double betaU() const { return table_.companion_period(0); }
  double GU() const { return table_.companion_period(1); }
  double V() const { return -betaU() / params_.alpha; }
  std::complex<double> Z() const { return 2.0 * std::complex<double>(U(), V()); }
  double tol() const { return tol_; }
  double interpolation_error() const { return table_.interpolation_error(); }

  ProfileSample eval(double u) const;
  // dG/du as a function of (phi, phi').
  double dG_of(double phi, double dphi) const;

  std::vector<ProfileSample> nodes() const;
  // Columns: u,phi,phiprime,beta,G,Gprime at the table nodes.
  void write_csv(std::ostream& os) const;

 private:
  AnnulusParams params_;
  double tol_;
  PhaseTable table_;
};

inline constexpr double kDefaultProfileTol = 1e-12;
inline constexpr int kDefaultProfileCells = 4096;

// Throws DomainError outside Omega, SolverError when the table cannot meet tol.
Profile solve_profile(const AnnulusParams& params, double tol = kDefaultProfileTol,
                      int cells = kDefaultProfileCells);

ProfileSample eval_profile(const Profile& profile, double u);

// Residuals of the five first/second-order identities satisfied by phi and G
// ("phiprimealpha", "phisecond", "Gsecondcosphi", "Gsecond", "Gsecond2"). Second
// derivatives are 5-point central differences of phi' and G' with the given step.
ResidualReport identity_residuals(const Profile& profile, std::span<const double> grid,
                                  double step = 1e-5);

// Quasi-period, oddness, midpoint and ODE laws ("period_phi", "period_beta",
// "period_G", "odd_phi", "odd_beta", "odd_G", "eqphi", "mid_phi", "mid_beta", "mid_G").
// eqphi uses a finite-difference phi' so it tests the u -> phi inversion; the default
// step (step <= 0) is 1e-3 / max(1, alpha).
ResidualReport profile_law_residuals(const Profile& profile, std::span<const double> grid,
                                     double step = 0.0);

}  // namespace nilcat
