#pragma once

#include <stdexcept>
#include <string>

namespace no3theta {

// Every engine failure derives from Error and carries a short machine code
// that the CLI and the HTTP service surface verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// A point or dimension outside the valid grid domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain_error", message) {}
};

/// Input is valid but outside the range where an exact formula holds.
class UnsupportedParameter : public Error {
 public:
  explicit UnsupportedParameter(const std::string& message)
      : Error("unsupported_parameter", message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("parse_error", message) {}
};

/// The requested angle has an irrational tangent, so no three lattice points realise it.
class NotRepresentable : public Error {
 public:
  explicit NotRepresentable(const std::string& message)
      : Error("not_representable", message) {}
};

class DegenerateAngle : public Error {
 public:
  explicit DegenerateAngle(const std::string& message) : Error("degenerate_angle", message) {}
};

/// A lemma or operation was called outside its hypothesis.
class LemmaInapplicable : public Error {
 public:
  explicit LemmaInapplicable(const std::string& message)
      : Error("lemma_inapplicable", message) {}
};

/// Work refused up front because it would not finish or not fit in memory.
class Refused : public Error {
 public:
  explicit Refused(const std::string& message) : Error("refused", message) {}
};

}  // namespace no3theta
