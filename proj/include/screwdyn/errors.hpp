#pragma once

#include <stdexcept>
#include <string>

namespace screwdyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or list lengths that do not match the chain length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or physically invalid input data (axes, inertias, files).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A configuration the algorithm does not handle (e.g. non-square Jacobian).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// The manipulator Jacobian is numerically singular.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double rcond)
      : Error(what), rcond_(rcond) {}

  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Inconsistent wiring between pipeline stages, e.g. kinematics computed
/// with the ground-acceleration gravity trick fed to a dynamics call that
/// expects it off.
class PipelineError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference input that violates the stencil requirements.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Bad command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace screwdyn
