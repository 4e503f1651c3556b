#include <doctest.h>

#include <algorithm>

#include "cyclat/norms.hpp"
#include "cyclat/solver.hpp"
#include "support.hpp"

using namespace cyclat;
using test_support::Rng;
using test_support::rel_near;

namespace {

double direct_norm(const CirculantLattice& lat, const IntVector& x) {
  double s = 0.0;
  for (double w : lat.lattice_vector(x)) s += w * w;
  return s;
}

// 2 Q x as a sum of squares over the pairs at distance r0 or n - r0.
std::int64_t twice_q_by_pairs(std::size_t n, std::size_t r0, const IntVector& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (j - i == r0 || j - i == n - r0) s += (x[i] + x[j]) * (x[i] + x[j]);
  return s;
}

}  // namespace

TEST_CASE("norm expansion equals the direct norm for unconstrained u") {
  Rng rng(201);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.index(2, 12);
    const CirculantLattice lat{GeneratorVector(rng.reals(n))};
    IntVector x = rng.ints(n, -4, 4);
    if (std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) x[0] = 1;
    CHECK(rel_near(norm_full(lat, x), direct_norm(lat, x), 1e-9));
  }
}

TEST_CASE("simplified norm on (1,1,0)") {
  const CirculantLattice lat{GeneratorVector({1, 1, 0})};
  for (const IntVector& x : {IntVector{1, 0, 0}, IntVector{1, -1, 0}, IntVector{2, -1, 3}}) {
    CHECK(norm_simplified(4.0, 1.0, 1, x) == doctest::Approx(direct_norm(lat, x)));
    CHECK(norm_simplified(4.0, 1.0, 1, x) == doctest::Approx(norm_full(lat, x)));
  }
}

TEST_CASE("simplified norm under solver output") {
  Rng rng(202);
  for (const auto& [n, r0] : {std::pair{5, 1}, std::pair{6, 2}, std::pair{7, 2}, std::pair{9, 3}}) {
    const SolveResult s = solve(SystemSpec(n, r0, Variant::A2Eq4B));
    REQUIRE(s.converged);
    const CirculantLattice lat(s.u);
    for (int t = 0; t < 30; ++t) {
      const IntVector x = rng.ints(n, -3, 3);
      const double full = norm_full(lat, x);
      CHECK(std::abs(full - norm_simplified(s.a * s.a, s.b, r0, x)) <= 1e-7 * std::max(1.0, full));
    }
  }
}

TEST_CASE("half case carries the doubled coupling") {
  // n = 2, u = (rho1, rho2): |x G|^2 = (rho1^2 + rho2^2)(x1^2 + x2^2) + 4 rho1 rho2 x1 x2
  const GeneratorVector u({2.0, 0.5});
  const CirculantLattice lat(u);
  const auto& v = lat.vieta();
  const IntVector x{1, 1};
  CHECK(norm_simplified(v.a * v.a, v.b, 1, x) == doctest::Approx(direct_norm(lat, x)));
}

TEST_CASE("exact integer pair sums") {
  Rng rng(203);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.index(2, 12);
    const IntVector x = rng.ints(n, -9, 9);
    const std::vector<double> xr(x.begin(), x.end());
    for (std::size_t r = 1; r <= n / 2; ++r)
      CHECK(static_cast<double>(pair_sum_wrapped_exact(r, x)) == pair_sum_wrapped(r, xr));
  }
  const std::int64_t big = 3'037'000'500;
  CHECK_THROWS_KIND(pair_sum_wrapped_exact(1, IntVector{big, big, big}), ErrorKind::ArithmeticOverflow);
}

TEST_CASE("Q-form against the pair decomposition") {
  Rng rng(204);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = rng.index(3, 15);
    const std::size_t r0 = rng.index(1, (n - 1) / 2);
    const IntVector x = rng.ints(n, -5, 5);
    CHECK(2 * q_form_eval(n, r0, x) == twice_q_by_pairs(n, r0, x));
  }
  CHECK_THROWS_KIND(q_form_eval(4, 2, IntVector{1, 0, 0, 0}), ErrorKind::InvalidIndex);
}

TEST_CASE("Q-form is at least 1 on nonzero vectors when n/gcd is odd") {
  for (const auto& [n, r0] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{5, 2}, std::pair{6, 2}}) {
    IntVector x(n, -3);
    std::size_t zero_hits = 0;
    while (true) {
      const bool zero = std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
      const auto q = q_form_eval(n, r0, x);
      if (zero) ++zero_hits;
      else CHECK(q >= 1);
      std::size_t d = 0;
      while (d < x.size() && x[d] == 3) x[d++] = -3;
      if (d == x.size()) break;
      ++x[d];
    }
    CHECK(zero_hits == 1);
  }
}

TEST_CASE("D-form pair-square identity when a^2 = 4b") {
  Rng rng(205);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.index(3, 13);
    const std::size_t r0 = rng.index(1, (n - 1) / 2);
    const IntVector x = rng.ints(n, -4, 4);
    const double b = static_cast<double>(rng.integer(1, 9));
    CHECK(d_form_eval(4.0 * b, b, n, r0, x) == b * static_cast<double>(twice_q_by_pairs(n, r0, x)));
  }
  CHECK_THROWS_KIND(d_form_eval(4, 1, 4, 2, IntVector{1, 0, 0, 0}), ErrorKind::Precondition);
}

TEST_CASE("coefficient eigenvalues match a dense eigensolver") {
  Rng rng(206);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.index(2, 12);
    const std::size_t r0 = rng.index(1, n / 2);
    const double a_sq = rng.uniform(0.5, 6.0), b = rng.uniform(-2.0, 2.0);
    const auto N = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
    for (Eigen::Index i = 0; i < N; ++i) {
      m(i, i) = a_sq - 2 * b;
      const double c = (2 * r0 == n) ? 2 * b : b;
      m(i, (i + static_cast<Eigen::Index>(r0)) % N) += c;
      if (2 * r0 != n) m(i, (i - static_cast<Eigen::Index>(r0) + N) % N) += c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    auto ours = coefficient_eigenvalues(a_sq, b, n, r0);
    std::sort(ours.begin(), ours.end());
    for (Eigen::Index j = 0; j < N; ++j)
      CHECK(ours[static_cast<std::size_t>(j)] == doctest::Approx(es.eigenvalues()(j)).epsilon(1e-9));
  }
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(4, 1, 5, 1).positive_definite);
  CHECK(is_positive_definite(4, 1, 5, 1).certificate == DefinitenessCertificate::SufficientCondition);
  CHECK_FALSE(is_positive_definite(4, 1, 4, 1).positive_definite);
  CHECK(is_positive_definite(4, 1, 6, 2).positive_definite);
  // a^2 < 4b falls back to the eigenvalues
  const Definiteness d = is_positive_definite(3.9, 1, 5, 1);
  CHECK(d.certificate == DefinitenessCertificate::MinEigenvalue);
  CHECK(d.positive_definite);
  CHECK_FALSE(is_positive_definite(1, 1, 5, 1).positive_definite);
}

TEST_CASE("alternating block vector lies in the kernel when a^2 = 4b") {
  CHECK(alternating_block_vector(4, 1) == IntVector{1, -1, 1, -1});
  CHECK(alternating_block_vector(8, 2) == IntVector{1, 0, -1, 0, 1, 0, -1, 0});
  for (const auto& [n, r0] : {std::pair{4, 1}, std::pair{6, 1}, std::pair{8, 1}, std::pair{8, 3}, std::pair{12, 2}}) {
    const IntVector x = alternating_block_vector(n, r0);
    CHECK(std::abs(d_form_eval(4.0, 1.0, n, r0, x)) <= 1e-9);
    const double g = static_cast<double>(std::gcd(std::size_t(n), std::size_t(r0)));
    CHECK(d_form_eval(5.0, 1.0, n, r0, x) == doctest::Approx(n / g * (5.0 - 4.0)));
  }
  CHECK_THROWS_KIND(alternating_block_vector(6, 2), ErrorKind::Precondition);
  CHECK_THROWS_KIND(alternating_block_vector(5, 1), ErrorKind::Precondition);
}
