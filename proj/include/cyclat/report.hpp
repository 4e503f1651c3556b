#pragma once

// End-to-end lattice reports: determinants, enumeration and density for a
// solver result or a literal generating vector.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cyclat/density.hpp"
#include "cyclat/enumeration.hpp"
#include "cyclat/lattice.hpp"
#include "cyclat/solver.hpp"

namespace cyclat {

enum class EnumerationStatus { Complete, Skipped, Singular };

std::string_view to_string(EnumerationStatus s) noexcept;

struct ReportOptions {
  EnumOptions enumeration;
  /// A wrapped pair sum counts as vanishing when |P_n(r) u| <= vanishing_tol * |u|^2.
  double vanishing_tol = 1e-4;
};

struct LatticeReport {
  std::size_t n = 0;
  std::optional<std::size_t> r0;
  Method method = Method::Raw;
  RealVector u;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> residual;
  RealVector p_values;  // P_n(r) u for r = 1..floor(n/2)

  double det_direct = 0.0;
  double det_eigen = 0.0;
  std::optional<double> det_closed;             // prediction from the construction
  std::optional<double> det_closed_vanishing;   // |det| from a, b once the other pair sums vanish

  EnumerationStatus enumeration = EnumerationStatus::Skipped;
  std::optional<double> min_norm_sq;
  std::optional<std::size_t> kissing;
  std::optional<double> delta;
  std::optional<double> delta_closed;
  double ref_Dn = 0.0;
  double ref_An = 0.0;

  std::optional<bool> converged;
  std::optional<std::size_t> starts_used;
  std::vector<std::string> flags;
};

/// Report for a solver result. Enumeration and closed forms are skipped when
/// the solve did not converge.
LatticeReport report_for_solution(const SystemSpec& spec, const SolveResult& result,
                                  const ReportOptions& options = {});

/// Report for an arbitrary generating vector. r0 and the construction are read
/// off the pattern of vanishing pair sums; closed forms are attached only when
/// the pattern matches one of the constructions.
LatticeReport analyze_vector(const GeneratorVector& u, const ReportOptions& options = {});

/// Single JSON document, keys in a fixed order.
std::string report_to_json(const LatticeReport& report);

}  // namespace cyclat
