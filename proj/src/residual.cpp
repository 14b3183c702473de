#include "nilcat/residual.hpp"

#include <json.hpp>

namespace nilcat {

void ResidualReport::record(const std::string& name, double value, double u, double v) {
  auto& e = entries_[name];
  const double mag = std::abs(value);
  const bool first = e.samples++ == 0;
  if (std::isnan(e.max_abs)) return;
  if (first || std::isnan(mag) || mag > e.max_abs) {
    e.max_abs = mag;
    e.at_u = u;
    e.at_v = v;
  }
}

void ResidualReport::set_threshold(const std::string& name, double threshold) {
  entries_[name].threshold = threshold;
}

void ResidualReport::merge(const ResidualReport& other, const std::string& prefix) {
  for (const auto& [name, entry] : other.entries_) entries_[prefix + name] = entry;
}

bool ResidualReport::all_pass() const {
  for (const auto& [name, e] : entries_) {
    if (!e.pass()) return false;
  }
  return true;
}

std::string ResidualReport::to_json(int indent) const {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto num = [](double x) -> nlohmann::ordered_json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  for (const auto& [name, e] : entries_) {
    nlohmann::ordered_json item;
    item["max_abs_residual"] = num(e.max_abs);
    item["location"] = {num(e.at_u), num(e.at_v)};
    item["threshold"] = num(e.threshold);
    item["pass"] = e.pass();
    j[name] = std::move(item);
  }
  return j.dump(indent);
}

}  // namespace nilcat
