#pragma once

#include <string>

namespace fracspec {

/// Writes to a sibling temporary file and renames it over `path`.
/// Throws Error when the file cannot be written.
void write_file_atomic(const std::string& path, const std::string& content);

/// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& text);

}  // namespace fracspec
