#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gai/arms.hpp"
#include "gai/core.hpp"

namespace gai {

class UnknownScenario : public std::invalid_argument {
 public:
  explicit UnknownScenario(const std::string& name) : std::invalid_argument("unknown scenario: " + name) {}
};

// The five benchmark instances, arms in their published order.
inline const std::map<std::string, Scenario>& builtin_scenarios() {
  static const std::map<std::string, Scenario> registry = [] {
    std::map<std::string, Scenario> m;
    auto add = [&m](Scenario s) {
      auto key = s.name();
      m.emplace(std::move(key), std::move(s));
    };
    const auto bern = NoiseModel::bernoulli();
    // Three groups: far below, spread across, far above the threshold.
    add(Scenario("threshold1", bern, {0.1, 0.1, 0.1, 0.35, 0.45, 0.55, 0.65, 0.9, 0.9, 0.9}, 0.5));
    // Arithmetic progression.
    add(Scenario("threshold2", bern, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 0.35));
    // Every arm close to the threshold.
    add(Scenario("threshold3", bern, {0.55, 0.55, 0.55, 0.45, 0.45, 0.45, 0.45, 0.45, 0.45, 0.45}, 0.5));
    // Dose-finding, ACR20 response rates.
    add(Scenario("medical1", bern, {0.36, 0.34, 0.469, 0.465, 0.537}, 0.5));
    // Dose-finding, DAS28 improvement; arm 5 sits exactly on the threshold.
    add(Scenario("medical2", NoiseModel::gaussian(1.44), {0.5, 0.7, 1.6, 1.8, 1.2, 1.0, 0.6}, 1.2));
    return m;
  }();
  return registry;
}

// Scenario document: {name, kind: "bernoulli"|"gaussian", means: [...], variance?, threshold}.
inline Scenario scenario_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = parse_reward_kind(doc.at("kind").get<std::string>());
    const auto means = doc.at("means").get<std::vector<double>>();
    const double threshold = doc.at("threshold").get<double>();
    const auto name = doc.at("name").get<std::string>();
    if (kind == RewardKind::Gaussian) {
      if (!doc.contains("variance")) throw std::invalid_argument("gaussian scenario needs a variance");
      return Scenario(name, NoiseModel::gaussian(doc.at("variance").get<double>()), means, threshold);
    }
    return Scenario(name, NoiseModel::bernoulli(), means, threshold);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed scenario document: ") + e.what());
  }
}

inline nlohmann::json scenario_to_json(const Scenario& s) {
  nlohmann::json doc = {
      {"name", s.name()},
      {"kind", std::string(to_string(s.noise().kind))},
      {"means", s.means()},
      {"threshold", s.threshold()},
  };
  if (s.noise().kind == RewardKind::Gaussian) doc["variance"] = s.noise().variance;
  return doc;
}

inline Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("scenario file " + path.string() + " is not valid JSON: " + e.what());
  }
  return scenario_from_json(doc);
}

// A readable file at `name_or_path` takes precedence over a built-in of the
// same name.
inline Scenario resolve_scenario(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return load_scenario_file(name_or_path);
  const auto& reg = builtin_scenarios();
  if (auto it = reg.find(name_or_path); it != reg.end()) return it->second;
  throw UnknownScenario(name_or_path);
}

}  // namespace gai
