#pragma once

#include <stdexcept>
#include <string>

namespace spindiff {

/// Base for all library errors. `kind()` is a stable machine-readable tag
/// used by the CLI to build its error line and pick an exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

struct GeometryError : Error {
  explicit GeometryError(const std::string& msg) : Error("geometry", msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error("dimension", msg) {}
};

/// NaN/Inf detected during time stepping; message carries the step index.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error("numeric", msg) {}
};

/// Observable requested before its precondition on the state holds.
struct StalenessError : Error {
  explicit StalenessError(const std::string& msg) : Error("staleness", msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error("io", msg) {}
};

}  // namespace spindiff
