#pragma once

#include <stdexcept>

namespace nilmat {

/// A size or search guard refused the request.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilmat
