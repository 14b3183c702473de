#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace nilcat {

// Named max-residuals over a sampling grid, with the parameter pair where each
// maximum was attained. A check may carry a pass threshold.
class ResidualReport {
 public:
  struct Entry {
    double max_abs = 0.0;
    double at_u = std::numeric_limits<double>::quiet_NaN();
    double at_v = std::numeric_limits<double>::quiet_NaN();
    double threshold = std::numeric_limits<double>::quiet_NaN();
    long samples = 0;

    bool has_threshold() const { return !std::isnan(threshold); }
    bool pass() const { return !std::isnan(max_abs) && (!has_threshold() || max_abs <= threshold); }
  };

  // Folds |value| into the running maximum of `name`. NaN residuals poison the entry.
  void record(const std::string& name, double value, double u = std::nan(""),
              double v = std::nan(""));
  void set_threshold(const std::string& name, double threshold);
  // Merges another report, prefixing its names.
  void merge(const ResidualReport& other, const std::string& prefix = "");

  const Entry& at(const std::string& name) const { return entries_.at(name); }
  bool contains(const std::string& name) const { return entries_.count(name) != 0; }
  double max_abs(const std::string& name) const { return at(name).max_abs; }
  const std::map<std::string, Entry>& entries() const { return entries_; }
  bool all_pass() const;

  // {"name": {"max_abs_residual": x, "location": [u, v], "threshold": t, "pass": b}, ...}
  std::string to_json(int indent = 2) const;

 private:
  std::map<std::string, Entry> entries_;
};

}  // namespace nilcat
