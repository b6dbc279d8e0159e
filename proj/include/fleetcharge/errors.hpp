#pragma once

#include <stdexcept>
#include <string>

namespace fleetcharge {

/// Malformed input data: broken instance invariants, bad file contents,
/// mismatched report/instance hashes.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was asked to run beyond its guarded problem size.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

/// A charging window would extend past the last timeline slot.
class HorizonExceeded : public std::runtime_error {
 public:
  explicit HorizonExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Total demand exceeds what the station cap can deliver over the horizon.
class InfeasibleDemand : public std::runtime_error {
 public:
  explicit InfeasibleDemand(const std::string& what) : std::runtime_error(what) {}
};

/// Every candidate completion at some rollout stage was infeasible.
class InfeasibleInstance : public std::runtime_error {
 public:
  explicit InfeasibleInstance(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fleetcharge
