#pragma once

#include <set>
#include <string>

#include "json.hpp"
#include "ll/driver.hpp"

namespace ll {

struct CampaignConfig {
  DriverParams driver;
  double horizon = 1.0;
  double dt = 1e-3;
  int n_paths = 1000;
  std::set<std::string> suites;  // nonempty
  std::string output_dir = "out";
  nlohmann::ordered_json tolerances;  // optional overrides

  static CampaignConfig from_json(const nlohmann::ordered_json& j);
  static CampaignConfig load(const std::string& file);
  nlohmann::ordered_json to_json() const;
};

// Executes the requested suites, writes every artifact plus manifest.json,
// and returns 0 iff all suite assertions pass.
int run_campaign(const CampaignConfig& config);

extern const std::set<std::string> kKnownSuites;

}  // namespace ll
