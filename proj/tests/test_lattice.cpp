#include <doctest.h>

#include <numeric>

#include "cyclat/lattice.hpp"
#include "support.hpp"

using namespace cyclat;
using test_support::Rng;
using test_support::rel_near;

namespace {

// Coefficients of prod (t - rho_i), highest degree first.
std::vector<double> expand_polynomial(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

// Wrapped pair sum through the cyclic correlation sum_i x_i x_{i+r mod n},
// halved when r = n/2 because every pair is then visited twice.
double correlation_pair_sum(std::size_t r, const std::vector<double>& x) {
  const std::size_t n = x.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[(i + r) % n];
  return 2 * r == n ? s / 2.0 : s;
}

}  // namespace

TEST_CASE("rot shifts right") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(rot(x, 1) == std::vector<double>{4, 1, 2, 3});
  CHECK(rot(x, 2) == std::vector<double>{3, 4, 1, 2});
  CHECK(rot(x, 4) == x);
  CHECK(rot(x, 5) == rot(x, 1));
}

TEST_CASE("generator rows are successive shifts") {
  const CirculantLattice lat{GeneratorVector({1, 1, 0})};
  Eigen::Matrix3d expected;
  expected << 1, 1, 0, 0, 1, 1, 1, 0, 1;
  CHECK(lat.generator() == expected);

  const CirculantLattice z3{GeneratorVector({1, 0, 0})};
  CHECK(z3.generator() == Eigen::Matrix3d::Identity());
  CHECK(z3.gram() == Eigen::Matrix3d::Identity());
}

TEST_CASE("gram of (0, rho, 0, 0, -rho)") {
  const double rho = 1.5;
  const CirculantLattice lat{GeneratorVector({0, rho, 0, 0, -rho})};
  const auto& g = lat.gram();
  for (Eigen::Index i = 0; i < 5; ++i) CHECK(g(i, i) == doctest::Approx(2 * rho * rho));
  // entry (0, d) is <u, rot^d u> = P_5(d) + P_5(5 - d) with only P_5(2) = -rho^2 nonzero
  CHECK(g(0, 1) == doctest::Approx(0.0));
  CHECK(g(0, 2) == doctest::Approx(-rho * rho));
  CHECK(g(0, 3) == doctest::Approx(-rho * rho));
  CHECK(g(0, 4) == doctest::Approx(0.0));
  const std::vector<double> u{0, rho, 0, 0, -rho};
  CHECK(pair_sum_wrapped(1, u) == 0.0);
  CHECK(pair_sum_wrapped(2, u) == doctest::Approx(-rho * rho));
}

TEST_CASE("vieta on (1,1,0)") {
  const VietaCoefficients v = vieta(GeneratorVector({1, 1, 0}));
  CHECK(v.a == -2.0);
  CHECK(v.b == 1.0);
  CHECK(v.norm_sq == 2.0);
}

TEST_CASE("vieta matches polynomial expansion") {
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.index(2, 12);
    const auto u = rng.reals(n);
    const auto c = expand_polynomial(u);
    const VietaCoefficients v = vieta(GeneratorVector(u));
    const double scale = std::inner_product(u.begin(), u.end(), u.begin(), 0.0) + 1.0;
    CHECK(rel_near(v.a, c[1], 1e-12, scale));
    CHECK(rel_near(v.b, c[2], 1e-12, scale));
    CHECK(rel_near(v.norm_sq, scale - 1.0, 1e-12, scale));
  }
}

TEST_CASE("wrapped pair sums agree with the correlation form and the plain split") {
  Rng rng(102);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.index(2, 13);
    const auto x = rng.reals(n);
    const double scale = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    const auto all = wrapped_pair_sums(x);
    REQUIRE(all.size() == n / 2);
    for (std::size_t r = 1; r <= n / 2; ++r) {
      CHECK(rel_near(pair_sum_wrapped(r, x), correlation_pair_sum(r, x), 1e-12, scale));
      CHECK(all[r - 1] == pair_sum_wrapped(r, x));
      if (2 * r != n)
        CHECK(rel_near(pair_sum_wrapped(r, x), pair_sum_plain(r, x) + pair_sum_plain(n - r, x), 1e-12, scale));
      else
        CHECK(pair_sum_wrapped(r, x) == doctest::Approx(pair_sum_plain(r, x)));
    }
  }
}

TEST_CASE("shift inner products") {
  Rng rng(103);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng.index(2, 10);
    const GeneratorVector u(rng.reals(n));
    const double scale = vieta(u).norm_sq;
    for (std::size_t k1 = 0; k1 < n; ++k1)
      for (std::size_t k2 = k1 + 1; k2 < n; ++k2) {
        const auto a = rot(u.entries(), k1), b = rot(u.entries(), k2);
        CHECK(rel_near(shift_inner(u, k1, k2), std::inner_product(a.begin(), a.end(), b.begin(), 0.0), 1e-10, scale));
      }
  }
}

TEST_CASE("b equals the sum of wrapped pair sums") {
  Rng rng(104);
  for (int t = 0; t < 100; ++t) {
    const auto u = rng.reals(rng.index(2, 16));
    const auto p = wrapped_pair_sums(u);
    const VietaCoefficients v = vieta(GeneratorVector(u));
    CHECK(rel_near(v.b, std::accumulate(p.begin(), p.end(), 0.0), 1e-10, std::max(std::abs(v.b), v.norm_sq)));
  }
}

TEST_CASE("gram is a symmetric circulant") {
  Rng rng(105);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.index(2, 11);
    const CirculantLattice lat{GeneratorVector(rng.reals(n))};
    const auto& g = lat.gram();
    const auto N = static_cast<Eigen::Index>(n);
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = 0; j < N; ++j) {
        CHECK(g(i, j) == doctest::Approx(g(j, i)));
        CHECK(g(i, j) == doctest::Approx(g(0, (j - i + N) % N)));
      }
  }
}

TEST_CASE("lattice vectors are integer combinations of rows") {
  const CirculantLattice lat{GeneratorVector({1, 1, 0})};
  CHECK(lat.lattice_vector(std::vector<std::int64_t>{1, -1, 0}) == std::vector<double>{1, 0, -1});
  CHECK_THROWS_KIND(lat.lattice_vector(std::vector<std::int64_t>{1, 2}), ErrorKind::InvalidInput);
}

TEST_CASE("input validation") {
  CHECK_THROWS_KIND(GeneratorVector({1.0}), ErrorKind::InvalidDimension);
  CHECK_THROWS_KIND(GeneratorVector({1.0, std::nan("")}), ErrorKind::InvalidInput);
  CHECK_THROWS_KIND(GeneratorVector({1.0, INFINITY}), ErrorKind::InvalidInput);
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK_THROWS_KIND(pair_sum_wrapped(0, x), ErrorKind::InvalidIndex);
  CHECK_THROWS_KIND(pair_sum_wrapped(3, x), ErrorKind::InvalidIndex);
  CHECK_THROWS_KIND(pair_sum_plain(5, x), ErrorKind::InvalidIndex);
  CHECK_THROWS_KIND(shift_inner(GeneratorVector(x), 2, 2), ErrorKind::InvalidIndex);
  CHECK(to_string(ErrorKind::SingularLattice) == "singular-lattice");
}
