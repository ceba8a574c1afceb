#pragma once

#include <stdexcept>
#include <string>

namespace cmf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input document does not match the expected JSON layout.
struct SchemaError : Error {
  using Error::Error;
};

struct SizeMismatch : Error {
  using Error::Error;
};

// Inversion of a matrix whose determinant vanishes.
struct SingularMatrix : Error {
  SingularMatrix(const std::string& what, std::string det)
      : Error(what), determinant(std::move(det)) {}
  std::string determinant;
};

// Input violates a documented precondition; `residual` carries the offending
// relation or value in printable form when one exists.
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what, std::string res = {})
      : Error(what), residual(std::move(res)) {}
  std::string residual;
};

struct UnsupportedModel : Error {
  using Error::Error;
};

// A computed quantity contradicts an identity that must hold.
struct InvariantBreach : Error {
  using Error::Error;
};

}  // namespace cmf
