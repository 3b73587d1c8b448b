#pragma once

#include "fracspec/decimation.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fracspec {

/// Environment variable naming the default registry file.
inline constexpr const char* kRegistryEnv = "FRACSPEC_REGISTRY";

/// Decimation systems by name. Rationals are "p/q" strings; irrational
/// values are {"poly": [ascending coefficients], "interval": [lo, hi]}.
class Registry {
 public:
  static Registry from_json(const std::string& text);
  static Registry from_file(const std::string& path);
  /// Copy of the built-in entries (interval, sg, sg3).
  static const Registry& builtin();
  /// The file named by FRACSPEC_REGISTRY if set, otherwise the built-ins.
  static Registry load_default();

  bool contains(const std::string& name) const;
  /// Throws ValidationError naming the unknown system.
  const DecimationSystem& get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<std::shared_ptr<const DecimationSystem>> systems_;
};

const std::string& builtin_registry_json();

/// JSON text for an exact value in registry form.
std::string exact_to_json(const ExactReal& x);
ExactReal exact_from_json(const std::string& text);

}  // namespace fracspec
