#pragma once

#include <stdexcept>
#include <string>

namespace panoseg {

/// File could not be read/written or its contents violate the binary format.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or incomplete configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Scene specification cannot be satisfied (e.g. placement with the required
/// gaps does not fit inside the scene bounds).
class GenerationError : public std::runtime_error {
 public:
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation input is inconsistent with the class configuration.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace panoseg
