#pragma once

#include <cmath>

namespace hankelwave {

/// Neumaier's variant of Kahan summation; also correct when an addend is
/// larger in magnitude than the running sum.
template <typename Value>
struct CompensatedSum {
  Value sum = Value{0};
  Value compensation = Value{0};

  CompensatedSum& operator+=(Value value) {
    const Value t = sum + value;
    if (std::abs(sum) >= std::abs(value))
      compensation += (sum - t) + value;
    else
      compensation += (value - t) + sum;
    sum = t;
    return *this;
  }

  Value value() const { return sum + compensation; }
};

}  // namespace hankelwave
