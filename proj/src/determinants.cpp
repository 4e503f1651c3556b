#include "cyclat/determinants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cyclat/error.hpp"

namespace cyclat {

namespace {

std::complex<double> root_of_unity(std::size_t k, std::size_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

double coupled_factor(double a, double b, std::size_t n, std::size_t r0, std::size_t j) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>((r0 * j) % n) / static_cast<double>(n);
  return a * a - 2.0 * b + 2.0 * b * std::cos(angle);
}

void check_r0(std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidIndex, "r0 outside 1..floor(n/2)");
}

}  // namespace

double det_direct(const CirculantLattice& lat) {
  const std::size_t n = lat.dim();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = lat.generator()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));

  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    if (m[pivot * n + col] == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      det = -det;
    }
    const double p = m[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / p;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

double det_eigen(const CirculantLattice& lat) {
  const std::size_t n = lat.dim();
  const auto u = lat.u().entries();
  std::complex<double> product{1.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> lambda{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) lambda += u[k] * root_of_unity(k * j, n);
    product *= lambda;
  }
  if (std::abs(product.imag()) > 1e-8 * (1.0 + std::abs(product.real())))
    fail(ErrorKind::NumericInconsistency, "eigenvalue product has a non-negligible imaginary part");
  return product.real();
}

ClosedDeterminant det_closed_vanishing(double a, double b, std::size_t n, std::size_t r0) {
  check_r0(n, r0);
  ClosedDeterminant out;
  if (n % 2 == 1) {
    double prod = 1.0;
    for (std::size_t j = 1; j <= (n - 1) / 2; ++j) prod *= coupled_factor(a, b, n, r0, j);
    out.signed_value = -a * prod;
    out.abs_value = std::abs(out.signed_value);
    out.sign_determined = true;
    return out;
  }
  double prod = 1.0;
  for (std::size_t j = 1; j <= (n - 2) / 2; ++j) prod *= coupled_factor(a, b, n, r0, j);
  double lead = 0.0;
  if (r0 % 2 == 0) {
    lead = a * a;
  } else {
    double radicand = a * a - 4.0 * b;
    // Rounding noise around a^2 = 4b counts as zero.
    if (radicand < 0.0 && radicand >= -1e-12 * std::max(a * a, 4.0 * std::abs(b))) radicand = 0.0;
    if (radicand < 0.0) fail(ErrorKind::Domain, "a^2 < 4b: negative radicand for even n, odd r0");
    lead = a * std::sqrt(radicand);
  }
  out.abs_value = std::abs(lead * prod);
  return out;
}

double det_closed_a4b(double a, std::size_t n, std::size_t r0) {
  check_r0(n, r0);
  const std::size_t g = std::gcd(r0, n);
  if ((n / g) % 2 == 0)
    fail(ErrorKind::Precondition, "n/gcd(r0,n) even: the a^2 = 4b lattice is singular");
  if (a == 0.0) fail(ErrorKind::Precondition, "a must be nonzero");
  return std::ldexp(std::pow(std::abs(a), static_cast<double>(n)), -static_cast<int>(n - g));
}

bool is_singular_det(double det, const CirculantLattice& lat) {
  // All rows of a circulant generator share the norm |u|.
  const double row_norm = std::sqrt(lat.vieta().norm_sq > 0.0 ? lat.vieta().norm_sq : 0.0);
  return std::abs(det) <= 1e-8 * std::pow(row_norm, static_cast<double>(lat.dim()));
}

DetReport det_report(const CirculantLattice& lat, std::optional<double> closed_abs) {
  DetReport r;
  r.det_direct = det_direct(lat);
  r.det_eigen_product = det_eigen(lat);
  r.det_closed = closed_abs;
  auto rel = [](double x, double y) {
    const double s = std::max(std::abs(x), std::abs(y));
    return s == 0.0 ? 0.0 : std::abs(std::abs(x) - std::abs(y)) / s;
  };
  r.abs_agreement = rel(r.det_direct, r.det_eigen_product);
  if (closed_abs) {
    r.abs_agreement = std::max({r.abs_agreement, rel(r.det_direct, *closed_abs),
                                rel(r.det_eigen_product, *closed_abs)});
  }
  return r;
}

}  // namespace cyclat
