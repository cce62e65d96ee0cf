#pragma once

#include <stdexcept>

namespace smstab {

/// Raised for pole hits and singular or ill-conditioned solves. Input validation
/// failures use std::invalid_argument / std::out_of_range instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smstab
