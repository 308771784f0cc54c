#pragma once

#include <stdexcept>
#include <string>

namespace hermpir {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation would exceed one of the configured size or work budgets.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Something that cannot happen for valid inputs did happen.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hermpir
