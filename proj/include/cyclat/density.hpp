#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclat {

/// (sqrt(min_norm_sq) / 2)^n / abs_det. Throws InvalidInput on non-positive input.
double center_density(double min_norm_sq, double abs_det, std::size_t n);

/// 2^-(gcd(r0,n) + n/2): the a^2 = 4b construction with n/gcd(r0,n) odd.
double delta_closed_a4b(std::size_t n, std::size_t r0);

/// 2^(-n/2) 3^(-n/4): n even, r0 = n/2, a^2 = -2b or a^2 = 6b.
double delta_closed_half(std::size_t n);

double ref_Dn(std::size_t n);  // 2^(-1-n/2)
double ref_An(std::size_t n);  // 2^(-n/2) (n+1)^(-1/2)

/// Best lattice center densities known in dimensions 1..35, rounded to five
/// significant digits (Conway & Sloane, SPLAG, Table 1.2). Dimensions 1..8
/// and 24 are proven optimal. Reference data only; nothing here is computed.
std::optional<double> best_known_density(std::size_t n);

enum class Method { A2Eq4B, HalfMinus2B, Half6B, Raw };

std::string_view to_string(Method m) noexcept;

struct TableRow {
  std::size_t n = 0;
  std::size_t r0 = 0;
  std::string method;  // "a2eq4b-r0=<r0>" or "half-n"
  double delta_ours = 0.0;
  double delta_Dn = 0.0;
  double delta_An = 0.0;
  std::optional<double> best_known;
};

/// One row per n in 2..n_max. Odd n uses r0 = 1, even n not a power of two
/// uses r0 = 2^alpha, powers of two fall back to the half-n construction.
std::vector<TableRow> density_table(std::size_t n_max);

/// Scientific notation with six digits after the point and a compact
/// exponent, e.g. 9.765625e-4.
std::string format_table_value(double v);

/// Header `n,method,delta_ours,delta_Dn,delta_An,best_known`; rows in order.
std::string table_to_csv(const std::vector<TableRow>& rows);

}  // namespace cyclat
