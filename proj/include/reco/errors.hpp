#pragma once

#include <stdexcept>

namespace reco {

// Invalid configuration values or unusable config files. CLI exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Files that cannot be opened, read or written. CLI exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed records or data violating an estimator contract. CLI exit code 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace reco
