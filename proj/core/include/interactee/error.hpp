#pragma once

#include <stdexcept>
#include <string>

namespace interactee {

/// Base of every error the library raises. Callers that only care about
/// "the input was bad" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class TooFewDistinctPoints : public Error {
 public:
  using Error::Error;
};

class TooFewExamples : public Error {
 public:
  using Error::Error;
};

class DuplicateBlockName : public Error {
 public:
  using Error::Error;
};

class LayoutMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteLoss : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class TargetLargerThanSource : public Error {
 public:
  using Error::Error;
};

/// Malformed file content (bad JSON, truncated binary).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed file that breaks a data invariant. The message carries a
/// JSON-pointer style locator such as "/images/3/image_id".
class ValidationError : public Error {
 public:
  ValidationError(std::string locator, const std::string& what)
      : Error(locator + ": " + what), locator_(std::move(locator)) {}

  const std::string& locator() const noexcept { return locator_; }

 private:
  std::string locator_;
};

}  // namespace interactee
