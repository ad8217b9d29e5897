#pragma once

#include <stdexcept>
#include <string>

namespace wildfire {

/// Bad input: malformed files, out-of-range values, missing paths.
/// The CLI maps this to exit code 1; every other exception maps to 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Link budget cannot support any transport block at the computed CNR.
class LinkInfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wildfire
