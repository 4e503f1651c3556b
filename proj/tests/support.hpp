#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <doctest.h>

#include "cyclat/error.hpp"

namespace test_support {

template <class F>
std::optional<cyclat::ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const cyclat::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

#define CHECK_THROWS_KIND(expr, k) \
  CHECK(::test_support::thrown_kind([&] { (void)(expr); }) == std::optional<cyclat::ErrorKind>(k))

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(gen_);
  }
  std::vector<double> reals(std::size_t n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  std::vector<std::int64_t> ints(std::size_t n, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> v(n);
    for (auto& x : v) x = integer(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

inline bool rel_near(double x, double y, double tol, double scale) { return std::abs(x - y) <= tol * scale; }

inline bool rel_near(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({std::abs(x), std::abs(y), 1e-300});
}

}  // namespace test_support
