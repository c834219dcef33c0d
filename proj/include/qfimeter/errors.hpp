#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qfimeter {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model parameters outside their domain (non-finite, u != 0 with N = 0, ...).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The eigensolver did not reach the residual bounds. Carries what it did reach.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A quantity that must be nonnegative came out clearly negative.
class NumericalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Malformed input file (CSV header, ragged grid, unparsable number).
class SchemaError : public Error {
 public:
  using Error::Error;
};

struct PointFailure {
  double tau;
  double u;
  int n_atoms;
  std::string message;
};

/// Raised by the sweep engine when any grid point fails; no partial grid is returned.
class SweepError : public Error {
 public:
  explicit SweepError(std::vector<PointFailure> failures);
  const std::vector<PointFailure>& failures() const noexcept { return failures_; }

 private:
  std::vector<PointFailure> failures_;
};

}  // namespace qfimeter
