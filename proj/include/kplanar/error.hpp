#pragma once

#include <stdexcept>
#include <string>

namespace kplanar {

/// Base exception for invalid input and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration would exceed its state cap.
class SearchSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace kplanar
