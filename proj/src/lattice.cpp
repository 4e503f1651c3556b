#include "cyclat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cyclat/error.hpp"

namespace cyclat {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidIndex: return "invalid-index";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ArithmeticOverflow: return "arithmetic-overflow";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::NumericInconsistency: return "numeric-inconsistency";
    case ErrorKind::SingularLattice: return "singular-lattice";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::NoValidR0: return "no-valid-r0";
  }
  return "unknown";
}

namespace {

void require_dimension(std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2, got " + std::to_string(n));
}

}  // namespace

GeneratorVector::GeneratorVector(std::vector<double> entries) : entries_(std::move(entries)) {
  require_dimension(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i]))
      fail(ErrorKind::InvalidInput, "generator entry " + std::to_string(i) + " is not finite");
  }
}

RealVector rot(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  require_dimension(n);
  k %= n;
  RealVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + k) % n] = x[i];
  return out;
}

double pair_sum_plain(std::size_t r, std::span<const double> x) {
  const std::size_t n = x.size();
  require_dimension(n);
  if (r < 1 || r > n - 1)
    fail(ErrorKind::InvalidIndex, "pair offset " + std::to_string(r) + " outside 1..n-1");
  double s = 0.0;
  for (std::size_t i = 0; i + r < n; ++i) s += x[i] * x[i + r];
  return s;
}

double pair_sum_wrapped(std::size_t r, std::span<const double> x) {
  const std::size_t n = x.size();
  require_dimension(n);
  if (r < 1 || r > n / 2)
    fail(ErrorKind::InvalidIndex, "wrapped offset " + std::to_string(r) + " outside 1..floor(n/2)");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = j - i;
      if (d == r || d == n - r) s += x[i] * x[j];
    }
  }
  return s;
}

RealVector wrapped_pair_sums(std::span<const double> x) {
  RealVector out;
  out.reserve(x.size() / 2);
  for (std::size_t r = 1; r <= x.size() / 2; ++r) out.push_back(pair_sum_wrapped(r, x));
  return out;
}

double shift_inner(const GeneratorVector& u, std::size_t k1, std::size_t k2) {
  const std::size_t n = u.size();
  if (!(k1 < k2) || k2 > n - 1)
    fail(ErrorKind::InvalidIndex, "shift indices must satisfy 0 <= k1 < k2 <= n-1");
  const std::size_t d = k2 - k1;
  return pair_sum_plain(d, u.entries()) + pair_sum_plain(n - d, u.entries());
}

VietaCoefficients vieta(const GeneratorVector& u) {
  const auto x = u.entries();
  const std::size_t n = x.size();
  double sum = 0.0;
  double sum_sq = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += x[i];
    sum_sq += x[i] * x[i];
    for (std::size_t j = i + 1; j < n; ++j) b += x[i] * x[j];
  }
  VietaCoefficients v;
  v.a = -sum;
  v.b = b;
  v.norm_sq = v.a * v.a - 2.0 * v.b;

  double from_pairs = 0.0;
  for (double p : wrapped_pair_sums(x)) from_pairs += p;
  const double scale = std::max({std::abs(b), sum_sq, 1e-300});
  if (std::abs(from_pairs - b) > 1e-10 * scale)
    fail(ErrorKind::NumericInconsistency, "b disagrees with the sum of wrapped pair sums");
  return v;
}

CirculantLattice::CirculantLattice(GeneratorVector u)
    : u_(std::move(u)), vieta_(cyclat::vieta(u_)) {
  const std::size_t n = u_.size();
  generator_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const RealVector row = rot(u_.entries(), i);
    for (std::size_t j = 0; j < n; ++j)
      generator_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  gram_ = generator_ * generator_.transpose();
}

RealVector CirculantLattice::lattice_vector(std::span<const std::int64_t> x) const {
  const std::size_t n = dim();
  if (x.size() != n) fail(ErrorKind::InvalidInput, "coefficient vector has wrong dimension");
  RealVector w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    const double c = static_cast<double>(x[i]);
    for (std::size_t j = 0; j < n; ++j)
      w[j] += c * generator_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return w;
}

CirculantLattice build_lattice(GeneratorVector u) { return CirculantLattice(std::move(u)); }

}  // namespace cyclat
