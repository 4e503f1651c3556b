#pragma once

// Circulant cyclic lattices: the lattice spanned by a real vector u and its
// circular shifts rot(u), rot^2(u), ..., rot^(n-1)(u).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cyclat {

using RealVector = std::vector<double>;
using IntVector = std::vector<std::int64_t>;

/// The real vector u = (rho_1, ..., rho_n), n >= 2, all entries finite.
class GeneratorVector {
 public:
  explicit GeneratorVector(std::vector<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }
  double operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const GeneratorVector&, const GeneratorVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Coefficients of t^(n-1) and t^(n-2) in f(t) = prod (t - rho_i).
struct VietaCoefficients {
  double a = 0.0;
  double b = 0.0;
  double norm_sq = 0.0;  // a^2 - 2b = sum rho_i^2
};

/// Right circular shift applied k times (k reduced mod n):
/// rot(x_1..x_n) = (x_n, x_1, ..., x_{n-1}).
RealVector rot(std::span<const double> x, std::size_t k);

/// Sum of x_i x_j over i < j with j - i = r, for 1 <= r <= n-1.
double pair_sum_plain(std::size_t r, std::span<const double> x);

/// Wrapped pair sum: x_i x_j over i < j with j - i in {r, n - r}, each pair
/// once, for 1 <= r <= floor(n/2). When r = n/2 the two offsets coincide.
double pair_sum_wrapped(std::size_t r, std::span<const double> x);

/// All wrapped pair sums for r = 1..floor(n/2); element r-1 holds offset r.
RealVector wrapped_pair_sums(std::span<const double> x);

/// <rot^k1(u), rot^k2(u)> for 0 <= k1 < k2 <= n-1, evaluated through the
/// pair sums at offsets k2-k1 and n-(k2-k1).
double shift_inner(const GeneratorVector& u, std::size_t k1, std::size_t k2);

/// Vieta coefficients by direct summation. Throws NumericInconsistency if the
/// identity b = sum_{r<=n/2} wrapped_pair_sum(r, u) fails at 1e-10.
VietaCoefficients vieta(const GeneratorVector& u);

class CirculantLattice {
 public:
  explicit CirculantLattice(GeneratorVector u);

  std::size_t dim() const noexcept { return u_.size(); }
  const GeneratorVector& u() const noexcept { return u_; }
  /// Row i is rot^i(u).
  const Eigen::MatrixXd& generator() const noexcept { return generator_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  const VietaCoefficients& vieta() const noexcept { return vieta_; }

  /// The lattice vector x * G for integer coefficients x.
  RealVector lattice_vector(std::span<const std::int64_t> x) const;

 private:
  GeneratorVector u_;
  Eigen::MatrixXd generator_;
  Eigen::MatrixXd gram_;
  VietaCoefficients vieta_;
};

CirculantLattice build_lattice(GeneratorVector u);

}  // namespace cyclat
