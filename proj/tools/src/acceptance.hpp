#pragma once

#include "fracspec/registry.hpp"

#include <string>
#include <vector>

namespace fracspec::app {

struct CriterionInfo {
  int id = 0;
  std::string key;
  std::string title;
  double budget_seconds = 0.0;
};

struct CriterionOutcome {
  CriterionInfo info;
  bool passed = false;  // tolerance checks and runtime budget
  std::string detail;
  double seconds = 0.0;
};

const std::vector<CriterionInfo>& criteria();

/// Accepts a number ("3") or a key ("sg3-fixed-point"); throws ValidationError otherwise.
const CriterionInfo& find_criterion(const std::string& id_or_key);

/// Runs one criterion; unexpected exceptions become a failed outcome.
CriterionOutcome run_criterion(const CriterionInfo& info, const Registry& registry);

/// "PASS  3 sg3-fixed-point  (0.12 s / 1 s)  <detail>"
std::string outcome_line(const CriterionOutcome& outcome);

}  // namespace fracspec::app
