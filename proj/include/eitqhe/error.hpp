#pragma once

#include <stdexcept>
#include <string>

namespace eitqhe {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter is outside its physical domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The constrained generator has a null space of dimension > 1.
class DegenerateSteadyState : public Error {
 public:
  DegenerateSteadyState(int nullity, int constrained_rank)
      : Error("degenerate steady state: constrained null space has dimension " +
              std::to_string(nullity) + " (rank " + std::to_string(constrained_rank) +
              " of 18)"),
        nullity_(nullity),
        rank_(constrained_rank) {}

  int nullity() const noexcept { return nullity_; }
  int rank() const noexcept { return rank_; }

 private:
  int nullity_;
  int rank_;
};

/// Time stepping lost the unit trace.
class StepInstability : public Error {
 public:
  using Error::Error;
};

/// sigma_A <= Lambda * sigma_E: the black-body fixed point does not exist.
class AboveThreshold : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagree.
class ConsistencyFailure : public Error {
 public:
  ConsistencyFailure(const std::string& what, double first, double second)
      : Error(what + " (" + std::to_string(first) + " vs " + std::to_string(second) + ")"),
        first_(first),
        second_(second) {}

  double first() const noexcept { return first_; }
  double second() const noexcept { return second_; }

 private:
  double first_;
  double second_;
};

}  // namespace eitqhe
