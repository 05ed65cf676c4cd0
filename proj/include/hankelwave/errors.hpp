#pragma once

#include <stdexcept>
#include <string>

namespace hankelwave {

/// Invalid parameter or configuration (bad order, negative radius, malformed grid).
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem with user-supplied data: unreadable CSV, non-finite samples, unsorted abscissae.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine could not deliver its accuracy contract.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Series evaluation lost too many digits to cancellation.
class precision_loss : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

/// Precondition on the argument range of a closed-form path is violated.
class out_of_range_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace hankelwave
