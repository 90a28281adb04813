#pragma once

#include <stdexcept>
#include <string>

namespace permlike {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checked 64-bit arithmetic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace permlike
