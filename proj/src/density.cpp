#include "cyclat/density.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "cyclat/error.hpp"
#include "cyclat/solver.hpp"

namespace cyclat {

namespace {

constexpr std::array<double, 36> kBestKnown = {
    0.0,  // unused (n = 0)
    0.5,     0.28868, 0.17678, 0.12500, 0.08839, 0.07217, 0.06250, 0.06250,  // 1-8
    0.04419, 0.03608, 0.03208, 0.03704, 0.03208, 0.03608, 0.04419, 0.06250,  // 9-16
    0.06250, 0.07217, 0.08839, 0.12500, 0.17678, 0.28868, 0.5,     1.0,      // 17-24
    0.70711, 0.57735, 0.57735, 0.66667, 0.57735, 0.65838, 1.20952, 2.56578,  // 25-32
    2.22203, 2.22203, 2.82843,                                              // 33-35
};

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

double center_density(double min_norm_sq, double abs_det, std::size_t n) {
  if (!(min_norm_sq > 0.0) || !(abs_det > 0.0))
    fail(ErrorKind::InvalidInput, "center density needs positive minimum norm and determinant");
  if (n < 1) fail(ErrorKind::InvalidDimension, "dimension must be positive");
  return std::pow(std::sqrt(min_norm_sq) / 2.0, static_cast<double>(n)) / abs_det;
}

double delta_closed_a4b(std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidSpec, "dimension must be >= 2");
  if (r0 < 1 || r0 > (n - 1) / 2) fail(ErrorKind::InvalidSpec, "r0 outside 1..floor((n-1)/2)");
  const std::size_t g = std::gcd(r0, n);
  if ((n / g) % 2 == 0) fail(ErrorKind::InvalidSpec, "n/gcd(r0,n) must be odd");
  return std::exp2(-(static_cast<double>(g) + static_cast<double>(n) / 2.0));
}

double delta_closed_half(std::size_t n) {
  if (n < 2 || n % 2 != 0) fail(ErrorKind::InvalidSpec, "half-n construction needs even n");
  const double nd = static_cast<double>(n);
  return std::exp2(-nd / 2.0) * std::pow(3.0, -nd / 4.0);
}

double ref_Dn(std::size_t n) { return std::exp2(-1.0 - static_cast<double>(n) / 2.0); }

double ref_An(std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::exp2(-nd / 2.0) / std::sqrt(nd + 1.0);
}

std::optional<double> best_known_density(std::size_t n) {
  if (n < 1 || n >= kBestKnown.size()) return std::nullopt;
  return kBestKnown[n];
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::A2Eq4B: return "a2eq4b";
    case Method::HalfMinus2B: return "half-minus-2b";
    case Method::Half6B: return "half-6b";
    case Method::Raw: return "raw";
  }
  return "unknown";
}

std::vector<TableRow> density_table(std::size_t n_max) {
  if (n_max < 2) fail(ErrorKind::InvalidInput, "n_max must be >= 2");
  std::vector<TableRow> rows;
  for (std::size_t n = 2; n <= n_max; ++n) {
    TableRow row;
    row.n = n;
    row.delta_Dn = ref_Dn(n);
    row.delta_An = ref_An(n);
    row.best_known = best_known_density(n);
    if (is_power_of_two(n)) {
      row.r0 = n / 2;
      row.method = "half-n";
      row.delta_ours = delta_closed_half(n);
    } else {
      row.r0 = n % 2 == 1 ? 1 : r0_optimal(n);
      row.method = "a2eq4b-r0=" + std::to_string(row.r0);
      row.delta_ours = delta_closed_a4b(n, row.r0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_table_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  std::string s(buf);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mantissa = s.substr(0, e);
  std::string exp = s.substr(e + 1);
  std::string sign;
  if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
    if (exp[0] == '-') sign = "-";
    exp.erase(0, 1);
  }
  const auto nz = exp.find_first_not_of('0');
  exp = nz == std::string::npos ? "0" : exp.substr(nz);
  return mantissa + "e" + sign + exp;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "n,method,delta_ours,delta_Dn,delta_An,best_known\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.method << ',' << format_table_value(r.delta_ours) << ','
        << format_table_value(r.delta_Dn) << ',' << format_table_value(r.delta_An) << ',';
    if (r.best_known) out << format_table_value(*r.best_known);
    out << '\n';
  }
  return out.str();
}

}  // namespace cyclat
