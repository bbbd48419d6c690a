#pragma once

#include <stdexcept>
#include <string>

namespace oic {

// Input distribution violates the feasibility conditions required by an
// operation (allocation, partition solving, ...).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver exhausted its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oic
