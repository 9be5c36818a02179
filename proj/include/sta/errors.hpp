#pragma once

#include <stdexcept>
#include <string>

namespace sta {

// Input or state violates a documented precondition or invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// No s-t path exists under the current metric.
struct NoPathError : std::runtime_error {
  explicit NoPathError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read, written, or parsed.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sta
