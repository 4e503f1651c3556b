#pragma once

// Least-squares solver for the orthogonality systems that make every wrapped
// pair sum of u vanish except the one at r0, together with a constraint
// linking a^2 and b:
//
//   A2Eq4B        |u|^2 = 2 <u, rot^r0(u)>      (equivalently a^2 = 4b)
//   HalfMinus2B   a^2 = -2b                      (n even, r0 = n/2)
//   Half6B        a^2 = 6b                       (n even, r0 = n/2)
//
// The objective is the sum of squares of those equations plus (a - pin)^2,
// which removes the scale freedom and the trivial solution u = 0.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "cyclat/lattice.hpp"

namespace cyclat {

enum class Variant { A2Eq4B, HalfMinus2B, Half6B };

std::string_view to_string(Variant v) noexcept;
/// Parses "a2eq4b", "half-minus-2b", "half-6b"; throws InvalidSpec otherwise.
Variant parse_variant(std::string_view text);

struct SolverSettings {
  double epsilon = 1e-16;
  std::optional<double> scale_pin = -2.0;
  std::size_t max_starts = 64;
  std::uint64_t rng_seed = 0;
  bool allow_singular = false;
};

class SystemSpec {
 public:
  /// Throws InvalidSpec for inconsistent (n, r0, variant) combinations. For
  /// A2Eq4B with n/gcd(r0,n) even the lattice is necessarily singular; that is
  /// rejected unless settings.allow_singular is set.
  SystemSpec(std::size_t n, std::size_t r0, Variant variant, SolverSettings settings = {});

  std::size_t n() const noexcept { return n_; }
  std::size_t r0() const noexcept { return r0_; }
  Variant variant() const noexcept { return variant_; }
  const SolverSettings& settings() const noexcept { return settings_; }

  /// Same system with the scale pin removed.
  SystemSpec unpinned() const;

 private:
  std::size_t n_;
  std::size_t r0_;
  Variant variant_;
  SolverSettings settings_;
};

struct SolveResult {
  GeneratorVector u;
  double residual = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::size_t starts_used = 0;
  bool converged = false;
};

/// Residual equations in a fixed order: the a^2/b constraint, the pair sums
/// that must vanish (increasing r), then the pin term when active.
Eigen::VectorXd residual_terms(const SystemSpec& spec, std::span<const double> u);
Eigen::MatrixXd residual_jacobian(const SystemSpec& spec, std::span<const double> u);

/// Sum of squares of residual_terms.
double residual(const SystemSpec& spec, const GeneratorVector& u);

/// Multi-start local minimisation from seeded uniform [-2, 2] starts. Returns
/// the first start whose residual drops below epsilon (with |a - pin| <= 1e-6),
/// otherwise the best start found with converged = false.
SolveResult solve(const SystemSpec& spec);

/// 2^alpha where alpha is the multiplicity of 2 in n. Throws NoValidR0 when n
/// is a power of two.
std::size_t r0_optimal(std::size_t n);

}  // namespace cyclat
