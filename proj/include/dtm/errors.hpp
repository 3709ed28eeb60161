#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtm {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument or evaluation point outside the mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A domain failure raised while advancing a trajectory.
class TrajectoryDomainError : public DomainError {
 public:
  TrajectoryDomainError(std::size_t step, const std::string& what)
      : DomainError("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// The radial coordinate reached or crossed the origin.
class CollapseError : public Error {
 public:
  CollapseError(std::size_t step, double r)
      : Error("orbit collapsed through r = 0 at step " + std::to_string(step) +
              " (r = " + std::to_string(r) + ")"),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Failures of the orbit-radius solver. orbit_index() is 0 when unknown.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what, int orbit_index = 0)
      : Error(what), orbit_index_(orbit_index) {}
  int orbit_index() const noexcept { return orbit_index_; }

 private:
  int orbit_index_;
};

class BracketError : public SolverError {
 public:
  using SolverError::SolverError;
};

class AmbiguityError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Radius-profile radicand is nonpositive at the queried orbit index.
class NegativeRadicandError : public DomainError {
 public:
  NegativeRadicandError(double n, double radicand)
      : DomainError("radius profile radicand " + std::to_string(radicand) +
                    " is not positive at n = " + std::to_string(n)),
        n_(n) {}
  double n() const noexcept { return n_; }

 private:
  double n_;
};

class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class MonotonicityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical self-check exceeded its tolerance.
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace dtm
