#pragma once

#include <string>

#include "nilcat/profile.hpp"
#include "nilcat/residual.hpp"

namespace nilcat {

struct VerifyOptions {
  double alpha = 1.0;
  double tol = kDefaultProfileTol;
  // Adds the large-alpha limit and waist checks (catenoids at alpha = 10, 50, 100).
  bool limits = true;
};

// Every module's residual checks at one alpha, each with its pass threshold. Boolean
// properties are recorded as 0 (holds) or 1 (violated) with threshold 0.
ResidualReport run_verify(const VerifyOptions& opt);

// {"alpha": ..., "tol": ..., "pass": ..., "failed": [...], "checks": {...}}
std::string verify_json(const VerifyOptions& opt, const ResidualReport& report);

}  // namespace nilcat
