#pragma once

#include <stdexcept>
#include <string>

namespace nilcat {

// Parameters outside the admissible set (e.g. alpha <= 0, (alpha, theta) outside Omega).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Evaluation would overflow cosh/sinh or leave a model's valid range.
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

// Degenerate first fundamental form or tangent plane where a transverse one is required.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical solver could not meet its tolerance or found an invalid bracket.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Sampling resolution below the minimum a construction needs.
class ResolutionError : public std::invalid_argument {
 public:
  explicit ResolutionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace nilcat
