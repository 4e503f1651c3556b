#pragma once

// Norms of lattice vectors x*G_u expressed through the Vieta coefficients and
// the wrapped pair sums, and the two integer quadratic forms that govern the
// minimum of the lattice once all but one pair sum of u vanish:
//
//   D x = (a^2 - 2b) sum x_i^2 + 2b P(r0) x        (real coefficients)
//   Q x = sum x_i^2 + P(r0) x                      (integer coefficients)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "cyclat/lattice.hpp"

namespace cyclat {

enum class FormKind { D, Q };

struct QuadForm {
  std::size_t n = 0;
  std::size_t r0 = 0;
  std::optional<double> a_sq;  // absent for the Q-form
  std::optional<double> b;     // absent for the Q-form
  bool half_case = false;      // n even and r0 = n/2
  FormKind kind = FormKind::D;

  static QuadForm d_form(std::size_t n, std::size_t r0, double a_sq, double b);
  static QuadForm q_form(std::size_t n, std::size_t r0);
};

/// Norm expansion valid for arbitrary u:
///   (a^2-2b) sum x_i^2 + 2 sum_{r<=(n-1)/2} P(r)u P(r)x + [n even] 4 P(n/2)u P(n/2)x
double norm_full(const CirculantLattice& lat, std::span<const std::int64_t> x);

/// The same expansion from precomputed coefficients; p_u[r-1] = P(r)u.
double norm_from_pair_sums(double a_sq_minus_2b, std::span<const double> p_u, std::span<const std::int64_t> x);

/// Norm when every wrapped pair sum of u except the one at r0 vanishes (so
/// b = P(r0)u). The caller is responsible for that condition.
double norm_simplified(double a_sq, double b, std::size_t r0, std::span<const std::int64_t> x);

/// Exact wrapped pair sum of an integer vector; throws ArithmeticOverflow.
std::int64_t pair_sum_wrapped_exact(std::size_t r, std::span<const std::int64_t> x);

/// Q-form, 1 <= r0 <= floor((n-1)/2), exact. Throws ArithmeticOverflow.
std::int64_t q_form_eval(std::size_t n, std::size_t r0, std::span<const std::int64_t> x);

/// D-form outside the half case (r0 <= floor((n-1)/2)); throws Precondition.
double d_form_eval(double a_sq, double b, std::size_t n, std::size_t r0,
                   std::span<const std::int64_t> x);

/// Eigenvalues of the circulant coefficient matrix of D (diagonal a^2-2b,
/// b at offsets +-r0; in the half case a single offset n/2 carrying 2b).
RealVector coefficient_eigenvalues(double a_sq, double b, std::size_t n, std::size_t r0);

enum class DefinitenessCertificate { SufficientCondition, MinEigenvalue };

struct Definiteness {
  bool positive_definite = false;
  DefinitenessCertificate certificate = DefinitenessCertificate::MinEigenvalue;
  double min_eigenvalue = 0.0;
};

/// Positive-definiteness of D. Uses the closed sufficient condition
/// (n/gcd(r0,n) odd and 0 != a^2 >= 4b) when it applies, otherwise the minimum
/// coefficient eigenvalue against 1e-9 (a^2 - 2b).
Definiteness is_positive_definite(double a_sq, double b, std::size_t n, std::size_t r0);

/// Kernel witness for n/gcd(r0,n) even: blocks of gcd(r0,n) coordinates
/// starting (1,0,..,0), (-1,0,..,0), ... alternating. D of this vector is
/// n/gcd * (a^2 - 4b). Throws Precondition when n/gcd(r0,n) is odd.
IntVector alternating_block_vector(std::size_t n, std::size_t r0);

}  // namespace cyclat
