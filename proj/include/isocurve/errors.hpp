#ifndef ISOCURVE_ERRORS_HPP
#define ISOCURVE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isocurve {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the 0-based byte offset into the
/// expression string where parsing failed.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Identifier that is neither a declared variable nor a known function.
class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(const std::string& name)
      : Error("unknown identifier '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Numeric evaluation left the domain of an elementary function
/// (log of non-positive, division by zero, sqrt of negative, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A queried parameter value or (u,v) point lies outside the declared domain.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// |phi_u x phi_v| fell below the immersion threshold.
class NonImmersedPoint : public Error {
 public:
  using Error::Error;
};

/// EG - F^2 is not safely positive.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// kappa is below threshold; the Frenet frame is undefined there.
class VanishingCurvature : public Error {
 public:
  using Error::Error;
};

/// Arc-length reparameterization hit a (near-)zero speed point.
class SingularSpeed : public Error {
 public:
  using Error::Error;
};

/// Operation requires a normal curve; carries the tangential defect alpha.t.
class NotANormalCurve : public Error {
 public:
  NotANormalCurve(const std::string& what, double tangential_defect)
      : Error(what), defect_(tangential_defect) {}
  double tangential_defect() const noexcept { return defect_; }

 private:
  double defect_;
};

/// The {phi_u, phi_v, N} basis could not be inverted.
class SingularBasis : public Error {
 public:
  using Error::Error;
};

/// Scene file could not be parsed. Carries 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Scene references a name that was never defined.
class UnresolvedReference : public Error {
 public:
  explicit UnresolvedReference(const std::string& name)
      : Error("unresolved reference '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Two scene objects share a name.
class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("duplicate name '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace isocurve

#endif  // ISOCURVE_ERRORS_HPP
