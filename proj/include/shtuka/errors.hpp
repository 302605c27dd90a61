#pragma once

#include <stdexcept>
#include <string>

namespace shtuka {

// Base for violated preconditions (CLI exit code 4).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A digit needed for a decision lies beyond the known precision (exit 3).
class PrecisionLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed literal or option (exit 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class Singular : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NotInSubgroup : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NotFundamental : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NotInCell : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NotCentral : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class NotUnipotentPart : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};
class BudgetExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace shtuka
