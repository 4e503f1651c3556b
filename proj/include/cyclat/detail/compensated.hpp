#pragma once

#include <cmath>

namespace cyclat::detail {

// Sum of floating-point values and exact products carried in a (hi, lo) pair; the result is
// as accurate as if it had been computed in twice the working precision.
// Requires that the compiler does not contract a*b+c (build with
// -ffp-contract=off).
template <class T>
class BasicCompensatedSum {
 public:
  void add(T x) noexcept {
    const T s = hi_ + x;
    const T bb = s - hi_;
    lo_ += (hi_ - (s - bb)) + (x - bb);
    hi_ = s;
  }

  void add_product(T a, T b) noexcept {
    const T p = a * b;
    const T e = std::fma(a, b, -p);
    add(p);
    lo_ += e;
  }

  T value() const noexcept { return hi_ + lo_; }

 private:
  T hi_ = 0;
  T lo_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

}  // namespace cyclat::detail
