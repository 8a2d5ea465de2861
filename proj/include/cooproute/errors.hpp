#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cooproute {

// Base for every error raised by the planner. Catching this at the CLI
// boundary distinguishes planning failures from I/O failures.
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class SizeLimitExceeded : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class GenerationFailed : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class FuelExhausted : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class Infeasible : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class ProtocolViolation : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

class Uncoverable : public PlanningError {
 public:
  explicit Uncoverable(std::vector<int> targets);
  const std::vector<int>& targets() const { return targets_; }

 private:
  std::vector<int> targets_;
};

class UnassignedPoint : public PlanningError {
 public:
  explicit UnassignedPoint(int point);
  int point() const { return point_; }

 private:
  int point_;
};

// Malformed scenario file; `field` names the offending JSON path.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace cooproute
