#include "cyclat/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cyclat/error.hpp"

namespace cyclat {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::ArithmeticOverflow, "integer overflow in quadratic form");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::ArithmeticOverflow, "integer overflow in quadratic form");
  return r;
}

RealVector to_real(std::span<const std::int64_t> x) {
  return RealVector(x.begin(), x.end());
}

double sum_sq(std::span<const std::int64_t> x) {
  double s = 0.0;
  for (auto v : x) s += static_cast<double>(v) * static_cast<double>(v);
  return s;
}

std::size_t checked_dim(std::size_t n, std::span<const std::int64_t> x) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (x.size() != n) fail(ErrorKind::InvalidInput, "vector length does not match dimension");
  return n;
}

}  // namespace

QuadForm QuadForm::d_form(std::size_t n, std::size_t r0, double a_sq, double b) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidIndex, "r0 outside 1..floor(n/2)");
  return QuadForm{n, r0, a_sq, b, n % 2 == 0 && 2 * r0 == n, FormKind::D};
}

QuadForm QuadForm::q_form(std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > (n - 1) / 2) fail(ErrorKind::InvalidIndex, "Q-form needs 1 <= r0 <= floor((n-1)/2)");
  return QuadForm{n, r0, std::nullopt, std::nullopt, false, FormKind::Q};
}

double norm_from_pair_sums(double a_sq_minus_2b, std::span<const double> p_u, std::span<const std::int64_t> x) {
  const std::size_t n = x.size();
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (p_u.size() != n / 2) fail(ErrorKind::InvalidInput, "need one pair sum per r = 1..floor(n/2)");
  const RealVector xr = to_real(x);
  double total = a_sq_minus_2b * sum_sq(x);
  for (std::size_t r = 1; r <= (n - 1) / 2; ++r) total += 2.0 * p_u[r - 1] * pair_sum_wrapped(r, xr);
  if (n % 2 == 0) total += 4.0 * p_u[n / 2 - 1] * pair_sum_wrapped(n / 2, xr);
  return total;
}

double norm_full(const CirculantLattice& lat, std::span<const std::int64_t> x) {
  checked_dim(lat.dim(), x);
  const auto& v = lat.vieta();
  const RealVector p_u = wrapped_pair_sums(lat.u().entries());
  return norm_from_pair_sums(v.a * v.a - 2.0 * v.b, p_u, x);
}

double norm_simplified(double a_sq, double b, std::size_t r0, std::span<const std::int64_t> x) {
  const std::size_t n = x.size();
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidIndex, "r0 outside 1..floor(n/2)");
  const double p = pair_sum_wrapped(r0, to_real(x));
  const double coupling = (2 * r0 == n) ? 4.0 * b : 2.0 * b;
  return (a_sq - 2.0 * b) * sum_sq(x) + coupling * p;
}

std::int64_t pair_sum_wrapped_exact(std::size_t r, std::span<const std::int64_t> x) {
  const std::size_t n = x.size();
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r < 1 || r > n / 2) fail(ErrorKind::InvalidIndex, "wrapped offset outside 1..floor(n/2)");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = j - i;
      if (d == r || d == n - r) s = checked_add(s, checked_mul(x[i], x[j]));
    }
  }
  return s;
}

std::int64_t q_form_eval(std::size_t n, std::size_t r0, std::span<const std::int64_t> x) {
  checked_dim(n, x);
  if (r0 < 1 || r0 > (n - 1) / 2) fail(ErrorKind::InvalidIndex, "Q-form needs 1 <= r0 <= floor((n-1)/2)");
  std::int64_t s = 0;
  for (auto v : x) s = checked_add(s, checked_mul(v, v));
  return checked_add(s, pair_sum_wrapped_exact(r0, x));
}

double d_form_eval(double a_sq, double b, std::size_t n, std::size_t r0,
                   std::span<const std::int64_t> x) {
  checked_dim(n, x);
  if (r0 < 1 || r0 > (n - 1) / 2)
    fail(ErrorKind::Precondition, "D-form requires r0 <= floor((n-1)/2); r0 = n/2 is the half case");
  return (a_sq - 2.0 * b) * sum_sq(x) + 2.0 * b * pair_sum_wrapped(r0, to_real(x));
}

RealVector coefficient_eigenvalues(double a_sq, double b, std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidIndex, "r0 outside 1..floor(n/2)");
  // Half case: single offset n/2 with coefficient 2b gives (a^2-2b) + 2b(-1)^j,
  // which is the same closed form as the generic one below.
  RealVector eig(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((r0 * j) % n) / static_cast<double>(n);
    eig[j] = (a_sq - 2.0 * b) + 2.0 * b * std::cos(angle);
  }
  return eig;
}

Definiteness is_positive_definite(double a_sq, double b, std::size_t n, std::size_t r0) {
  const RealVector eig = coefficient_eigenvalues(a_sq, b, n, r0);
  const double min_eig = *std::min_element(eig.begin(), eig.end());

  const std::size_t g = std::gcd(r0, n);
  const bool sufficient = r0 <= (n - 1) / 2 && (n / g) % 2 == 1 && a_sq != 0.0 && a_sq >= 4.0 * b;
  if (sufficient) return {true, DefinitenessCertificate::SufficientCondition, min_eig};

  const double diag = a_sq - 2.0 * b;
  const bool definite = diag > 0.0 && min_eig > 1e-9 * diag;
  return {definite, DefinitenessCertificate::MinEigenvalue, min_eig};
}

IntVector alternating_block_vector(std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidIndex, "r0 outside 1..floor(n/2)");
  const std::size_t g = std::gcd(r0, n);
  const std::size_t blocks = n / g;
  if (blocks % 2 != 0)
    fail(ErrorKind::Precondition, "n/gcd(r0,n) is odd; no alternating kernel vector exists");
  IntVector x(n, 0);
  for (std::size_t k = 0; k < blocks; ++k) x[k * g] = (k % 2 == 0) ? 1 : -1;
  return x;
}

}  // namespace cyclat
