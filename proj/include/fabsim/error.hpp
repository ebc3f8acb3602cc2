#pragma once

#include <stdexcept>
#include <string>

namespace fabsim {

// Invalid scenario/topology input. Reported before a run starts.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unrecoverable fault inside the model (a contract between model
// components was broken). Aborts the run with the offending actor named.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fabsim
