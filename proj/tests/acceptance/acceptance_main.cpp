#include "acceptance.hpp"

#include <iostream>

int main(int argc, char** argv) {
  using namespace fracspec::app;
  const auto& registry = fracspec::Registry::builtin();
  std::vector<CriterionInfo> chosen;
  try {
    for (int k = 1; k < argc; ++k) chosen.push_back(find_criterion(argv[k]));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (chosen.empty()) chosen = criteria();
  int failed = 0;
  for (const auto& info : chosen) {
    auto outcome = run_criterion(info, registry);
    std::cout << outcome_line(outcome) << std::endl;
    if (!outcome.passed) ++failed;
  }
  std::cout << chosen.size() - failed << "/" << chosen.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
