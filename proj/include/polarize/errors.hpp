#pragma once

#include <stdexcept>
#include <string>

namespace polarize {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched parents, malformed shapes, incompatible operands.
struct StructuralError : Error {
  using Error::Error;
};

/// Invalid input data: bad tables, failed construction checks, parse errors.
struct ValidationError : Error {
  using Error::Error;
};

/// A documented operation precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// Element has no multiplicative inverse.
struct NotInvertibleError : Error {
  using Error::Error;
};

/// Requested construction exceeds a hard size cap.
struct SizeLimitError : Error {
  using Error::Error;
};

/// Group closure did not terminate within the allowed order.
struct NotClosedError : Error {
  using Error::Error;
};

/// Unknown catalog name.
struct LookupError : Error {
  using Error::Error;
};

/// A numeric consistency requirement failed (e.g. residual imaginary parts).
struct NumericFailure : Error {
  using Error::Error;
};

/// The classical parallelogram identity failed; carries a witness pair.
struct ParallelogramViolation : Error {
  ParallelogramViolation(const std::string& msg, std::string witness)
      : Error(msg), witness_json(std::move(witness)) {}
  std::string witness_json;
};

/// A sampled Hermitian-form property failed during reconstruction.
struct ReconstructionFailure : Error {
  ReconstructionFailure(const std::string& msg, std::string witness)
      : Error(msg), witness_json(std::move(witness)) {}
  std::string witness_json;
};

}  // namespace polarize
