#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace nilcat {

// Adaptive Dormand-Prince 5(4) integrator for small fixed-size systems y' = f(t, y).
// Step control uses the embedded 4th-order solution with a mixed error norm
// max_i |err_i| / (abs_tol + rel_tol*|y_i|).
template <std::size_t N>
class DormandPrince45 {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<State(double, const State&)>;

  DormandPrince45(Rhs rhs, double abs_tol, double rel_tol = 0.0)
      : rhs_(std::move(rhs)), abs_tol_(abs_tol), rel_tol_(rel_tol) {}

  // Integrates from t0 to t1 (either direction), landing exactly on t1.
  // Throws SolverError when the step size underflows.
  State integrate(double t0, double t1, State y);

  long accepted_steps() const { return accepted_; }
  long rejected_steps() const { return rejected_; }

 private:
  Rhs rhs_;
  double abs_tol_;
  double rel_tol_;
  double h_ = 0.0;
  long accepted_ = 0;
  long rejected_ = 0;
};

}  // namespace nilcat

#include "nilcat/ode_impl.hpp"
