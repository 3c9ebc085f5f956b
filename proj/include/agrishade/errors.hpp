#pragma once

#include <stdexcept>
#include <string>

namespace agrishade {

// Error taxonomy maps onto CLI exit codes: config 2, ingest 3, simulation 4.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace agrishade
