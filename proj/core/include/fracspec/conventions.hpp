#pragma once

#include <string>

namespace fracspec {

enum class Convention { combinatorial, probabilistic };
enum class Boundary { dirichlet, neumann };

std::string to_string(Convention c);
std::string to_string(Boundary b);
/// Throw ValidationError on unknown names.
Convention parse_convention(const std::string& name);
Boundary parse_boundary(const std::string& name);

}  // namespace fracspec
