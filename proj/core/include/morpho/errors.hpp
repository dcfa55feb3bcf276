#pragma once

#include <stdexcept>
#include <string>

namespace morpho {

/// Invalid or inconsistent user configuration (unknown keys, bad values).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The time integrator could not produce an acceptable step.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace morpho
