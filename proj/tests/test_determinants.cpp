#include <doctest.h>

#include <cmath>

#include "cyclat/determinants.hpp"
#include "cyclat/solver.hpp"
#include "support.hpp"

using namespace cyclat;
using test_support::Rng;
using test_support::rel_near;

namespace {

double lu_det(const CirculantLattice& lat) { return lat.generator().partialPivLu().determinant(); }

}  // namespace

TEST_CASE("hand fixtures") {
  const CirculantLattice lat{GeneratorVector({1, 1, 0})};
  CHECK(det_direct(lat) == doctest::Approx(2.0));
  CHECK(det_eigen(lat) == doctest::Approx(2.0));
  CHECK(det_direct(CirculantLattice{GeneratorVector({1, 0, 0, 0})}) == 1.0);
  CHECK(det_closed_a4b(-2.0, 3, 1) == doctest::Approx(2.0));
  CHECK(det_closed_a4b(-2.0, 5, 1) == doctest::Approx(2.0));
  CHECK(det_closed_a4b(-2.0, 5, 2) == doctest::Approx(2.0));
  CHECK(det_closed_a4b(3.0, 6, 2) == doctest::Approx(std::pow(3.0, 6) / 16.0));
  CHECK(det_closed_a4b(-2.0, 12, 4) == doctest::Approx(std::pow(2.0, 12) / std::pow(2.0, 8)));
}

TEST_CASE("direct elimination, eigenvalue product and LU agree on random u") {
  Rng rng(301);
  for (int t = 0; t < 200; ++t) {
    const CirculantLattice lat{GeneratorVector(rng.reals(rng.index(2, 16)))};
    const double d = det_direct(lat);
    CHECK(rel_near(d, lu_det(lat), 1e-9));
    CHECK(rel_near(std::abs(d), std::abs(det_eigen(lat)), 1e-9));
    const DetReport r = det_report(lat);
    CHECK(r.abs_agreement <= 1e-9);
  }
}

TEST_CASE("rotation and scaling") {
  Rng rng(302);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.index(2, 10);
    const auto u = rng.reals(n);
    const double d = det_direct(CirculantLattice{GeneratorVector(u)});
    CHECK(rel_near(std::abs(det_direct(CirculantLattice{GeneratorVector(rot(u, 1))})), std::abs(d), 1e-9));
    const double c = rng.uniform(-3.0, 3.0);
    auto cu = u;
    for (auto& v : cu) v *= c;
    CHECK(rel_near(det_direct(CirculantLattice{GeneratorVector(cu)}), std::pow(c, static_cast<double>(n)) * d, 1e-9));
  }
}

TEST_CASE("closed forms on solver output") {
  for (const auto& [n, r0] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{5, 2}, std::pair{6, 2}, std::pair{7, 1},
                              std::pair{9, 1}, std::pair{10, 2}, std::pair{12, 4}, std::pair{15, 3}}) {
    const SolveResult s = solve(SystemSpec(n, r0, Variant::A2Eq4B));
    REQUIRE(s.converged);
    const CirculantLattice lat(s.u);
    const double d = det_direct(lat);
    const ClosedDeterminant c = det_closed_vanishing(s.a, s.b, n, r0);
    CHECK(rel_near(std::abs(d), c.abs_value, 1e-6));
    CHECK(rel_near(std::abs(d), det_closed_a4b(s.a, n, r0), 1e-6));
    CHECK(rel_near(std::abs(d), std::abs(det_eigen(lat)), 1e-9));
    if (n % 2 == 1) {
      CHECK(c.sign_determined);
      CHECK(rel_near(d, c.signed_value, 1e-6));
    }
  }
  for (const auto& [n, v] : {std::pair{2, Variant::Half6B}, std::pair{4, Variant::Half6B},
                             std::pair{6, Variant::HalfMinus2B}, std::pair{8, Variant::Half6B}}) {
    const SolveResult s = solve(SystemSpec(n, n / 2, v));
    REQUIRE(s.converged);
    const double d = det_direct(CirculantLattice(s.u));
    CHECK(rel_near(std::abs(d), det_closed_vanishing(s.a, s.b, n, n / 2).abs_value, 1e-6));
  }
}

TEST_CASE("relaxed solutions with n/gcd even are singular") {
  for (const auto& [n, r0] : {std::pair{4, 1}, std::pair{6, 1}, std::pair{8, 1}, std::pair{8, 3}}) {
    SolverSettings settings;
    settings.allow_singular = true;
    const SolveResult s = solve(SystemSpec(n, r0, Variant::A2Eq4B, settings));
    REQUIRE(s.converged);
    const CirculantLattice lat(s.u);
    const double d = det_direct(lat);
    CHECK(std::abs(d) <= 1e-6 * std::pow(std::sqrt(lat.vieta().norm_sq), n));
    CHECK(is_singular_det(d, lat));
    CHECK(det_closed_vanishing(s.a, s.b, n, r0).abs_value <= 1e-6);
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_KIND(det_closed_vanishing(1.0, 1.0, 4, 1), ErrorKind::Domain);
  CHECK_THROWS_KIND(det_closed_a4b(-2.0, 4, 1), ErrorKind::Precondition);
  CHECK_THROWS_KIND(det_closed_a4b(0.0, 5, 1), ErrorKind::Precondition);
  CHECK_THROWS_KIND(det_closed_a4b(-2.0, 5, 3), ErrorKind::InvalidIndex);
  CHECK_FALSE(is_singular_det(2.0, CirculantLattice{GeneratorVector({1, 1, 0})}));
  CHECK(is_singular_det(0.0, CirculantLattice{GeneratorVector({1, 1, 0})}));
}
