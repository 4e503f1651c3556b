#pragma once

#include <cstddef>
#include <optional>

#include "cyclat/lattice.hpp"

namespace cyclat {

/// Gaussian elimination with partial pivoting on the generator matrix.
/// Returns 0.0 when a pivot column is exactly zero.
double det_direct(const CirculantLattice& lat);

/// Real part of prod_j lambda_j, lambda_j = sum_k rho_k zeta_n^(k j).
/// Throws NumericInconsistency when the imaginary residue exceeds
/// 1e-8 (1 + |real part|).
double det_eigen(const CirculantLattice& lat);

/// Closed form under the vanishing condition. The sign is only determined
/// for odd n; downstream code uses the absolute value.
struct ClosedDeterminant {
  double abs_value = 0.0;
  bool sign_determined = false;
  double signed_value = 0.0;  // meaningful only when sign_determined
};

/// n odd:             -a prod_{j=1}^{(n-1)/2} (a^2 - 2b + 2b cos(2 pi r0 j / n))
/// n even, r0 even:  +-a^2 prod_{j=1}^{(n-2)/2} (...)
/// n even, r0 odd:   +-a sqrt(a^2-4b) prod_{j=1}^{(n-2)/2} (...)   (Domain error if a^2 < 4b beyond rounding)
ClosedDeterminant det_closed_vanishing(double a, double b, std::size_t n, std::size_t r0);

/// |a|^n / 2^(n - gcd(r0,n)) in the a^2 = 4b regime; Precondition error when
/// n/gcd(r0,n) is even (the lattice is then singular).
double det_closed_a4b(double a, std::size_t n, std::size_t r0);

/// Scale-aware zero test: |det| <= 1e-8 (geometric mean of row norms)^n.
bool is_singular_det(double det, const CirculantLattice& lat);

struct DetReport {
  double det_direct = 0.0;
  double det_eigen_product = 0.0;
  std::optional<double> det_closed;  // absolute value
  double abs_agreement = 0.0;        // max relative discrepancy of |det| values
};

DetReport det_report(const CirculantLattice& lat, std::optional<double> closed_abs = std::nullopt);

}  // namespace cyclat
