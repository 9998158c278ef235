#include <cmath>
#include <fstream>

#include <json.hpp>

#include "decolab/verify.hpp"

namespace decolab {

void VerificationReport::evaluate() {
  passed = true;
  for (const auto& [key, bound] : thresholds) {
    auto pos = key.find(':');
    if (pos == std::string::npos) {
      passed = false;
      continue;
    }
    std::string kind = key.substr(0, pos);
    auto it = metrics.find(key.substr(pos + 1));
    if (it == metrics.end() || !std::isfinite(it->second)) {
      passed = false;
      continue;
    }
    double v = it->second;
    if (kind == "min" ? v < bound : v > bound) passed = false;
  }
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["test"] = test_name;
  j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metrics) j["metrics"][k] = v;
  j["thresholds"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : thresholds) j["thresholds"][k] = v;
  j["passed"] = passed;
  j["artifacts"] = artifacts;
  if (!classification.empty()) j["classification"] = classification;
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(2);
}

void VerificationReport::write_json(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw error("cannot write " + path);
  out << to_json() << '\n';
}

}  // namespace decolab
