#include "cyclat/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "cyclat/determinants.hpp"
#include "cyclat/error.hpp"

namespace cyclat {

std::string_view to_string(EnumerationStatus s) noexcept {
  switch (s) {
    case EnumerationStatus::Complete: return "complete";
    case EnumerationStatus::Skipped: return "skipped";
    case EnumerationStatus::Singular: return "singular";
  }
  return "unknown";
}

namespace {

void add_flag(LatticeReport& r, std::string flag) {
  for (const auto& f : r.flags)
    if (f == flag) return;
  r.flags.push_back(std::move(flag));
}

LatticeReport base_report(const GeneratorVector& u) {
  LatticeReport r;
  r.n = u.size();
  r.u.assign(u.entries().begin(), u.entries().end());
  const VietaCoefficients v = vieta(u);
  r.a = v.a;
  r.b = v.b;
  r.p_values = wrapped_pair_sums(u.entries());
  r.ref_Dn = ref_Dn(r.n);
  r.ref_An = ref_An(r.n);
  return r;
}

std::optional<double> closed_vanishing_abs(double a, double b, std::size_t n, std::size_t r0) {
  try {
    return det_closed_vanishing(a, b, n, r0).abs_value;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain) return std::nullopt;
    throw;
  }
}

void fill_measurements(LatticeReport& r, const CirculantLattice& lat, bool run_enumeration,
                       const ReportOptions& options) {
  r.det_direct = det_direct(lat);
  r.det_eigen = det_eigen(lat);
  if (is_singular_det(r.det_direct, lat)) {
    add_flag(r, "singular-lattice");
    r.enumeration = EnumerationStatus::Singular;
    return;
  }
  if (!run_enumeration) {
    r.enumeration = EnumerationStatus::Skipped;
    add_flag(r, "enumeration-skipped");
    return;
  }
  try {
    const EnumResult e = enumerate_short(lat, std::nullopt, options.enumeration);
    r.enumeration = EnumerationStatus::Complete;
    r.min_norm_sq = e.min_norm_sq;
    r.kissing = e.kissing;
    r.delta = center_density(e.min_norm_sq, std::abs(r.det_direct), r.n);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) {
      r.enumeration = EnumerationStatus::Skipped;
      add_flag(r, "enumeration-skipped");
    } else if (e.kind() == ErrorKind::SingularLattice) {
      r.enumeration = EnumerationStatus::Singular;
      add_flag(r, "singular-lattice");
    } else {
      throw;
    }
  }
}

Method method_of(Variant v) {
  switch (v) {
    case Variant::A2Eq4B: return Method::A2Eq4B;
    case Variant::HalfMinus2B: return Method::HalfMinus2B;
    case Variant::Half6B: return Method::Half6B;
  }
  return Method::Raw;
}

// Closed forms of the three constructions, given r0 and the method.
void attach_predictions(LatticeReport& r) {
  if (!r.r0) return;
  const std::size_t n = r.n;
  const std::size_t r0 = *r.r0;
  r.det_closed_vanishing = closed_vanishing_abs(r.a, r.b, n, r0);
  switch (r.method) {
    case Method::A2Eq4B:
      if ((n / std::gcd(r0, n)) % 2 == 1 && r.a != 0.0) {
        r.det_closed = det_closed_a4b(r.a, n, r0);
        r.delta_closed = delta_closed_a4b(n, r0);
      } else {
        r.det_closed = 0.0;
      }
      break;
    case Method::HalfMinus2B:
    case Method::Half6B:
      r.det_closed = r.det_closed_vanishing;
      r.delta_closed = delta_closed_half(n);
      break;
    case Method::Raw:
      break;
  }
}

}  // namespace

LatticeReport report_for_solution(const SystemSpec& spec, const SolveResult& result,
                                  const ReportOptions& options) {
  LatticeReport r = base_report(result.u);
  r.r0 = spec.r0();
  r.method = method_of(spec.variant());
  r.residual = result.residual;
  r.converged = result.converged;
  r.starts_used = result.starts_used;
  if (!result.converged) add_flag(r, "not-converged");
  if (r.a == 0.0) add_flag(r, "degenerate: a=0");

  const CirculantLattice lat(result.u);
  if (result.converged) attach_predictions(r);
  fill_measurements(r, lat, result.converged && r.n <= options.enumeration.max_dim, options);
  return r;
}

LatticeReport analyze_vector(const GeneratorVector& u, const ReportOptions& options) {
  LatticeReport r = base_report(u);
  const double norm_sq = std::max(vieta(u).norm_sq, 0.0);
  const double tol = options.vanishing_tol * norm_sq;
  const std::size_t n = r.n;

  if (std::abs(r.a) <= options.vanishing_tol * std::sqrt(norm_sq)) add_flag(r, "degenerate: a=0");

  std::vector<std::size_t> live;
  for (std::size_t k = 0; k < r.p_values.size(); ++k)
    if (std::abs(r.p_values[k]) > tol) live.push_back(k + 1);

  if (live.size() == 1) {
    const std::size_t r0 = live.front();
    r.r0 = r0;
    const double a_sq = r.a * r.a;
    const double scale = std::max(a_sq, norm_sq);
    auto near_zero = [&](double x) { return std::abs(x) <= options.vanishing_tol * scale; };
    if (2 * r0 != n) {
      if (near_zero(a_sq - 4.0 * r.b) && r.a != 0.0) r.method = Method::A2Eq4B;
    } else if (near_zero(a_sq + 2.0 * r.b)) {
      r.method = Method::HalfMinus2B;
    } else if (near_zero(a_sq - 6.0 * r.b)) {
      r.method = Method::Half6B;
    }
    attach_predictions(r);
  }

  const CirculantLattice lat(u);
  fill_measurements(r, lat, n <= options.enumeration.max_dim, options);
  return r;
}

std::string report_to_json(const LatticeReport& r) {
  using json = nlohmann::ordered_json;
  auto opt = [](const auto& v) -> json {
    if (v) return json(*v);
    return nullptr;
  };
  json det;
  det["direct"] = r.det_direct;
  det["eigen"] = r.det_eigen;
  det["closed"] = opt(r.det_closed);
  det["closed_vanishing"] = opt(r.det_closed_vanishing);

  json refs;
  refs["Dn"] = r.ref_Dn;
  refs["An"] = r.ref_An;

  json doc;
  doc["n"] = r.n;
  doc["r0"] = opt(r.r0);
  doc["variant"] = std::string(to_string(r.method));
  doc["u"] = r.u;
  doc["a"] = r.a;
  doc["b"] = r.b;
  doc["residual"] = opt(r.residual);
  doc["p_values"] = r.p_values;
  doc["det"] = std::move(det);
  doc["min_norm_sq"] = opt(r.min_norm_sq);
  doc["kissing"] = opt(r.kissing);
  doc["delta"] = opt(r.delta);
  doc["delta_closed"] = opt(r.delta_closed);
  doc["refs"] = std::move(refs);
  doc["enumeration"] = std::string(to_string(r.enumeration));
  doc["converged"] = opt(r.converged);
  doc["starts_used"] = opt(r.starts_used);
  doc["flags"] = r.flags;
  return doc.dump(2) + "\n";
}

}  // namespace cyclat
