#pragma once

// Shortest vectors and kissing numbers of circulant lattices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cyclat/lattice.hpp"

namespace cyclat {

struct EnumOptions {
  std::size_t max_dim = 14;
  std::int64_t max_box = 6;
  /// Norms within this relative distance of the smallest count as minimal.
  double tie_rel = 1e-9;
};

struct EnumResult {
  double min_norm_sq = 0.0;
  std::size_t kissing = 0;
  std::vector<IntVector> minimal_coeff_vectors;  // sorted lexicographically
  std::int64_t bound_used = 0;                   // coordinate box half-width B
};

/// Eigenvalues |lambda_j|^2 of the Gram matrix, lambda_j the circulant
/// eigenvalues of the generator.
RealVector gram_eigenvalues(const CirculantLattice& lat);

/// Complete search for the minimum norm and all minimal coefficient vectors.
///
/// Every coefficient vector x with |xG|^2 <= T satisfies |x|^2 <= T / mu_min,
/// so the box |x_i| <= B = ceil(sqrt(T / mu_min)) contains all candidates
/// (T = target, or the basis row norm). Inside the box the search walks the
/// Cholesky factor of the Gram matrix and discards partial coefficient
/// vectors whose projected norm already exceeds the running bound.
///
/// Throws SingularLattice when the Gram matrix is numerically singular and
/// BudgetExceeded when n > max_dim or B > max_box.
EnumResult enumerate_short(const CirculantLattice& lat, std::optional<double> target = std::nullopt,
                           const EnumOptions& options = {});

/// #{x in Z^n : Q x = 1} for Q x = sum x_i^2 + P(r0) x, counted exactly with
/// integer arithmetic over the box |x_i| <= ceil(sqrt(1 / nu_min)), nu_min the
/// smallest eigenvalue of Q's coefficient matrix. Requires
/// 1 <= r0 <= floor((n-1)/2) and n/gcd(r0,n) odd (InvalidSpec otherwise).
std::size_t kissing_by_qform(std::size_t n, std::size_t r0);

/// Exhaustive minimum of |xG|^2 over nonzero x with |x_i| <= box.
double oracle_min(const CirculantLattice& lat, std::int64_t box);

}  // namespace cyclat
