#pragma once

#include <stdexcept>
#include <string>

namespace witnesskit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(const std::string& what) : Error("not Hermitian: " + what) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& what) : Error("no convergence: " + what) {}
};

class Singular : public Error {
 public:
  explicit Singular(const std::string& what) : Error("singular system: " + what) {}
};

class OutOfFamily : public Error {
 public:
  explicit OutOfFamily(const std::string& what) : Error("parameter outside family: " + what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error("invalid state: " + what) {}
};

class EffectViolation : public Error {
 public:
  explicit EffectViolation(const std::string& what) : Error("EffectViolation: " + what) {}
};

class DegenerateDenominator : public Error {
 public:
  explicit DegenerateDenominator(const std::string& what)
      : Error("DegenerateDenominator: " + what) {}
};

class ZeroFilter : public Error {
 public:
  explicit ZeroFilter(const std::string& what) : Error("ZeroFilter: " + what) {}
};

/// Raised when a trace that must be real carries an imaginary residue.
class NumericalResidue : public Error {
 public:
  explicit NumericalResidue(const std::string& what) : Error("numerical residue: " + what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace witnesskit
