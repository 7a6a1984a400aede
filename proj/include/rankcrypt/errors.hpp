#pragma once

#include <stdexcept>
#include <string>

namespace rankcrypt {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

class RejectedModulus : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inverse of zero") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
};

class BadBasis : public Error {
 public:
  using Error::Error;
};

class InconsistentSystem : public Error {
 public:
  InconsistentSystem() : Error("linear system has no solution") {}
};

// A computation produced a result that contradicts a proven identity.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class DependentGenerator : public Error {
 public:
  using Error::Error;
};

class BadDims : public Error {
 public:
  using Error::Error;
};

class DecodeFailure : public Error {
 public:
  DecodeFailure() : Error("no codeword within the decoding radius") {}
  using Error::Error;
};

class NotGabidulin : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

class SamplingFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankcrypt
