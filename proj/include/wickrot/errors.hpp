#pragma once

#include <stdexcept>
#include <string>

namespace wick {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched vector/tensor/matrix dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Linearly dependent input where independence is required.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Violated operation precondition (caller bug, not data).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or failed internal numeric consistency check.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Flow exhausted its iteration budget without a definite verdict.
class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace wick
