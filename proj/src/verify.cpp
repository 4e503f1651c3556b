#include "cyclat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "cyclat/density.hpp"
#include "cyclat/determinants.hpp"
#include "cyclat/enumeration.hpp"
#include "cyclat/error.hpp"
#include "cyclat/lattice.hpp"
#include "cyclat/norms.hpp"
#include "cyclat/report.hpp"
#include "cyclat/solver.hpp"

namespace cyclat {

bool VerifySummary::all_passed() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.passed || o.skipped; });
}

const PropertyOutcome* VerifySummary::first_failure() const {
  for (const auto& o : outcomes)
    if (!o.passed && !o.skipped) return &o;
  return nullptr;
}

namespace {

using Check = std::optional<std::string>;  // counterexample, or nothing on success

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(integer(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  }
  RealVector real_vector(std::size_t n) {
    RealVector v(n);
    for (auto& x : v) x = uniform(-2.0, 2.0);
    return v;
  }
  IntVector int_vector(std::size_t n, std::int64_t lo, std::int64_t hi) {
    IntVector v(n);
    for (auto& x : v) x = integer(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

template <class V>
std::string show(const V& v) {
  std::ostringstream out;
  out.precision(17);
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

bool rel_close(double x, double y, double tol, double scale) {
  return std::abs(x - y) <= tol * std::max(scale, 1e-300);
}

bool rel_close(double x, double y, double tol) {
  return rel_close(x, y, tol, std::max(std::abs(x), std::abs(y)));
}

double direct_norm_sq(const CirculantLattice& lat, const IntVector& x) {
  double s = 0.0;
  for (double w : lat.lattice_vector(x)) s += w * w;
  return s;
}

bool is_zero(const IntVector& x) {
  return std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
}

struct Fixture {
  std::size_t n;
  std::size_t r0;
  Variant variant;
};

struct Solved {
  Fixture fixture;
  SystemSpec spec;
  SolveResult result;
  std::string label() const {
    return "n=" + std::to_string(fixture.n) + " r0=" + std::to_string(fixture.r0) + " " +
           std::string(to_string(fixture.variant));
  }
};

const std::vector<Fixture> kA2Fixtures = {{3, 1, Variant::A2Eq4B},  {5, 1, Variant::A2Eq4B}, {5, 2, Variant::A2Eq4B},
                                          {6, 2, Variant::A2Eq4B},  {7, 1, Variant::A2Eq4B}, {9, 1, Variant::A2Eq4B},
                                          {10, 2, Variant::A2Eq4B}, {11, 1, Variant::A2Eq4B}, {12, 4, Variant::A2Eq4B}};
const std::vector<Fixture> kHalfFixtures = {
    {2, 1, Variant::Half6B}, {4, 2, Variant::Half6B}, {6, 3, Variant::HalfMinus2B}, {8, 4, Variant::Half6B}};
const std::vector<Fixture> kSingularFixtures = {{4, 1, Variant::A2Eq4B}, {6, 1, Variant::A2Eq4B}, {8, 1, Variant::A2Eq4B}};

class Runner {
 public:
  explicit Runner(std::ostream* log) : log_(log) {}

  void check(const std::string& name, const std::function<Check()>& body) {
    PropertyOutcome o;
    o.name = name;
    try {
      const Check c = body();
      o.passed = !c.has_value();
      if (c) o.detail = *c;
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    emit(o);
  }

  void skip(const std::string& name, const std::string& reason) {
    PropertyOutcome o;
    o.name = name;
    o.skipped = true;
    o.detail = reason;
    emit(o);
  }

  VerifySummary finish() { return std::move(summary_); }

 private:
  void emit(PropertyOutcome o) {
    if (log_) {
      if (o.skipped) *log_ << "SKIP " << o.name << " (" << o.detail << ")\n";
      else if (o.passed) *log_ << "PASS " << o.name << "\n";
      else *log_ << "FAIL " << o.name << ": " << o.detail << "\n";
    }
    summary_.outcomes.push_back(std::move(o));
  }

  std::ostream* log_;
  VerifySummary summary_;
};

std::vector<Solved> solve_all(const std::vector<Fixture>& fixtures, std::uint64_t seed, bool allow_singular) {
  std::vector<Solved> out;
  for (const auto& f : fixtures) {
    SolverSettings s;
    s.rng_seed = seed;
    s.allow_singular = allow_singular;
    SystemSpec spec(f.n, f.r0, f.variant, s);
    out.push_back({f, spec, solve(spec)});
  }
  return out;
}

Check require_converged(const Solved& s) {
  if (!s.result.converged) return s.label() + ": solver did not converge (residual " + num(s.result.residual) + ")";
  return std::nullopt;
}

// ---- lattice ----

void lattice_properties(Runner& run, std::uint64_t seed) {
  run.check("pair-sum-split", [seed]() -> Check {
    Rng rng(seed ^ 0x11);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = rng.index(2, 12);
      const RealVector x = rng.real_vector(n);
      const double scale = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
      for (std::size_t r = 1; 2 * r < n; ++r) {
        const double w = pair_sum_wrapped(r, x);
        const double p = pair_sum_plain(r, x) + pair_sum_plain(n - r, x);
        if (!rel_close(w, p, 1e-10, scale))
          return "x=" + show(x) + " r=" + std::to_string(r) + " wrapped=" + num(w) + " plain=" + num(p);
      }
    }
    return std::nullopt;
  });

  run.check("shift-inner-product", [seed]() -> Check {
    Rng rng(seed ^ 0x12);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = rng.index(2, 10);
      const GeneratorVector u(rng.real_vector(n));
      const double scale = vieta(u).norm_sq;
      for (std::size_t k1 = 0; k1 < n; ++k1)
        for (std::size_t k2 = k1 + 1; k2 < n; ++k2) {
          const RealVector s1 = rot(u.entries(), k1);
          const RealVector s2 = rot(u.entries(), k2);
          const double direct = std::inner_product(s1.begin(), s1.end(), s2.begin(), 0.0);
          const double via = shift_inner(u, k1, k2);
          if (!rel_close(direct, via, 1e-10, scale))
            return "u=" + show(u.entries()) + " k1=" + std::to_string(k1) + " k2=" + std::to_string(k2);
        }
    }
    return std::nullopt;
  });

  run.check("vieta-pair-sum-identity", [seed]() -> Check {
    Rng rng(seed ^ 0x13);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = rng.index(2, 16);
      const GeneratorVector u(rng.real_vector(n));
      const VietaCoefficients v = vieta(u);
      const RealVector p = wrapped_pair_sums(u.entries());
      const double sum = std::accumulate(p.begin(), p.end(), 0.0);
      if (!rel_close(v.b, sum, 1e-10, std::max(std::abs(v.b), v.norm_sq)))
        return "u=" + show(u.entries()) + " b=" + num(v.b) + " sum=" + num(sum);
      const double sq = std::inner_product(u.entries().begin(), u.entries().end(), u.entries().begin(), 0.0);
      if (!rel_close(sq, v.a * v.a - 2.0 * v.b, 1e-10, sq))
        return "u=" + show(u.entries()) + " sum of squares " + num(sq) + " vs a^2-2b " + num(v.a * v.a - 2.0 * v.b);
    }
    return std::nullopt;
  });

  run.check("gram-circulant", [seed]() -> Check {
    Rng rng(seed ^ 0x14);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = rng.index(2, 12);
      const CirculantLattice lat{GeneratorVector(rng.real_vector(n))};
      const auto& g = lat.gram();
      const double scale = lat.vieta().norm_sq;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
          const auto d = static_cast<Eigen::Index>((j + n - i) % n);
          if (!rel_close(g(ii, jj), g(jj, ii), 1e-12, scale) || !rel_close(g(ii, jj), g(0, d), 1e-10, scale))
            return "u=" + show(lat.u().entries()) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    return std::nullopt;
  });
}

// ---- norms ----

void norm_properties(Runner& run, std::uint64_t seed, bool tamper, const std::vector<Solved>& a2) {
  run.check("norm-expansion", [seed, tamper]() -> Check {
    Rng rng(seed ^ 0x21);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = rng.index(2, 12);
      const CirculantLattice lat{GeneratorVector(rng.real_vector(n))};
      IntVector x = rng.int_vector(n, -3, 3);
      if (is_zero(x)) x[0] = 1;
      double expansion = norm_full(lat, x);
      if (tamper) {
        RealVector p = wrapped_pair_sums(lat.u().entries());
        p[0] = -p[0];
        const auto& v = lat.vieta();
        expansion = norm_from_pair_sums(v.a * v.a - 2.0 * v.b, p, x);
      }
      const double direct = direct_norm_sq(lat, x);
      if (!rel_close(expansion, direct, 1e-9))
        return "u=" + show(lat.u().entries()) + " x=" + show(x) + " expansion=" + num(expansion) +
               " direct=" + num(direct);
    }
    return std::nullopt;
  });

  run.check("norm-simplified", [seed, &a2]() -> Check {
    Rng rng(seed ^ 0x22);
    for (const auto& s : a2) {
      if (auto c = require_converged(s)) return c;
      const CirculantLattice lat(s.result.u);
      const auto& v = lat.vieta();
      for (int t = 0; t < 50; ++t) {
        const IntVector x = rng.int_vector(s.fixture.n, -3, 3);
        const double full = norm_full(lat, x);
        const double simple = norm_simplified(v.a * v.a, v.b, s.fixture.r0, x);
        if (std::abs(full - simple) > 1e-7 * std::max(1.0, full))
          return s.label() + " x=" + show(x) + " full=" + num(full) + " simplified=" + num(simple);
      }
    }
    return std::nullopt;
  });

  run.check("pair-square-identity", [seed]() -> Check {
    Rng rng(seed ^ 0x23);
    const std::pair<double, double> coeffs[] = {{4.0, 1.0}, {16.0, 4.0}, {36.0, 9.0}};
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = rng.index(3, 14);
      const std::size_t r0 = rng.index(1, (n - 1) / 2);
      const auto [a_sq, b] = coeffs[t % 3];
      const IntVector x = rng.int_vector(n, -4, 4);
      const double lhs = d_form_eval(a_sq, b, n, r0, x);
      // pairs (i, j), i < j, j - i in {r0, n - r0}
      double pairs = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (j - i == r0 || j - i == n - r0) {
            const double s = static_cast<double>(x[i] + x[j]);
            pairs += s * s;
          }
      const double rhs = a_sq / 4.0 * pairs;
      if (lhs != rhs)
        return "n=" + std::to_string(n) + " r0=" + std::to_string(r0) + " x=" + show(x) + " D=" + num(lhs) +
               " pair squares=" + num(rhs);
    }
    return std::nullopt;
  });

  run.check("kernel-witness", []() -> Check {
    const std::pair<std::size_t, std::size_t> cases[] = {{4, 1}, {6, 1}, {8, 1}, {8, 3}, {10, 1}, {12, 3}, {12, 2}};
    for (const auto& [n, r0] : cases) {
      const IntVector x = alternating_block_vector(n, r0);
      for (const double a : {1.0, 2.0, 3.7}) {
        const double d = d_form_eval(a * a, a * a / 4.0, n, r0, x);
        if (std::abs(d) > 1e-9)
          return "n=" + std::to_string(n) + " r0=" + std::to_string(r0) + " a=" + num(a) + " D=" + num(d);
      }
    }
    return std::nullopt;
  });

  run.check("q-form-positivity", [seed]() -> Check {
    // exhaustive over [-4,4]^n for n <= 6
    const std::pair<std::size_t, std::size_t> small[] = {{3, 1}, {5, 1}, {5, 2}, {6, 2}};
    for (const auto& [n, r0] : small) {
      IntVector x(n, -4);
      while (true) {
        if (!is_zero(x) && q_form_eval(n, r0, x) < 1)
          return "n=" + std::to_string(n) + " r0=" + std::to_string(r0) + " x=" + show(x);
        std::size_t d = 0;
        while (d < n && x[d] == 4) x[d++] = -4;
        if (d == n) break;
        ++x[d];
      }
    }
    Rng rng(seed ^ 0x24);
    const std::pair<std::size_t, std::size_t> large[] = {{7, 1}, {9, 1}, {10, 2}, {12, 4}, {15, 5}, {21, 7}};
    for (const auto& [n, r0] : large)
      for (int t = 0; t < 2000; ++t) {
        const IntVector x = rng.int_vector(n, -4, 4);
        if (!is_zero(x) && q_form_eval(n, r0, x) < 1)
          return "n=" + std::to_string(n) + " r0=" + std::to_string(r0) + " x=" + show(x);
      }
    return std::nullopt;
  });

  run.check("definiteness-criterion", []() -> Check {
    struct Case {
      std::size_t n, r0;
      double a_sq, b;
      bool expected;
    };
    const Case cases[] = {{5, 1, 4, 1, true},  {4, 1, 4, 1, false}, {6, 2, 4, 1, true},
                          {8, 1, 4, 1, false}, {9, 3, 4, 1, true},  {7, 2, 9, 2, true}};
    for (const auto& c : cases) {
      const Definiteness d = is_positive_definite(c.a_sq, c.b, c.n, c.r0);
      if (d.positive_definite != c.expected)
        return "n=" + std::to_string(c.n) + " r0=" + std::to_string(c.r0) + " a^2=" + num(c.a_sq) + " b=" + num(c.b);
    }
    return std::nullopt;
  });
}

// ---- determinants ----

void determinant_properties(Runner& run, std::uint64_t seed, const std::vector<Solved>& a2,
                            const std::vector<Solved>& half, const std::vector<Solved>& singular) {
  run.check("det-direct-vs-eigen", [seed]() -> Check {
    Rng rng(seed ^ 0x31);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = rng.index(2, 16);
      const CirculantLattice lat{GeneratorVector(rng.real_vector(n))};
      const double d1 = det_direct(lat), d2 = det_eigen(lat);
      if (!rel_close(std::abs(d1), std::abs(d2), 1e-9))
        return "u=" + show(lat.u().entries()) + " direct=" + num(d1) + " eigen=" + num(d2);
    }
    return std::nullopt;
  });

  run.check("det-closed-forms", [&a2, &half]() -> Check {
    for (const auto& s : a2) {
      if (auto c = require_converged(s)) return c;
      const CirculantLattice lat(s.result.u);
      const double d = std::abs(det_direct(lat));
      const auto& v = lat.vieta();
      const double vanishing = det_closed_vanishing(v.a, v.b, s.fixture.n, s.fixture.r0).abs_value;
      const double a4b = det_closed_a4b(v.a, s.fixture.n, s.fixture.r0);
      if (!rel_close(d, vanishing, 1e-6) || !rel_close(d, a4b, 1e-6))
        return s.label() + " direct=" + num(d) + " vanishing-form=" + num(vanishing) + " a4b-form=" + num(a4b);
    }
    for (const auto& s : half) {
      if (auto c = require_converged(s)) return c;
      const CirculantLattice lat(s.result.u);
      const double d = std::abs(det_direct(lat));
      const auto& v = lat.vieta();
      const double vanishing = det_closed_vanishing(v.a, v.b, s.fixture.n, s.fixture.r0).abs_value;
      if (!rel_close(d, vanishing, 1e-6)) return s.label() + " direct=" + num(d) + " vanishing-form=" + num(vanishing);
    }
    return std::nullopt;
  });

  run.check("det-singular", [&singular]() -> Check {
    for (const auto& s : singular) {
      if (auto c = require_converged(s)) return c;
      const CirculantLattice lat(s.result.u);
      const double d = det_direct(lat);
      const double bound = 1e-6 * std::pow(std::sqrt(lat.vieta().norm_sq), static_cast<double>(lat.dim()));
      if (!(std::abs(d) <= bound) || !is_singular_det(d, lat)) return s.label() + " det=" + num(d);
    }
    return std::nullopt;
  });

  run.check("det-rotation-and-scale", [seed]() -> Check {
    Rng rng(seed ^ 0x32);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = rng.index(2, 12);
      const RealVector u = rng.real_vector(n);
      const double d = det_direct(CirculantLattice{GeneratorVector(u)});
      const double dr = det_direct(CirculantLattice{GeneratorVector(rot(u, rng.index(1, n - 1)))});
      if (!rel_close(std::abs(d), std::abs(dr), 1e-9)) return "u=" + show(u) + " rotation changed |det|";
      double c = rng.uniform(0.25, 3.0);
      if (t % 2) c = -c;
      RealVector cu(u);
      for (auto& v : cu) v *= c;
      const double dc = det_direct(CirculantLattice{GeneratorVector(cu)});
      if (!rel_close(dc, std::pow(c, static_cast<double>(n)) * d, 1e-9))
        return "u=" + show(u) + " c=" + num(c) + " det(cu)=" + num(dc) + " c^n det(u)=" + num(std::pow(c, n) * d);
    }
    return std::nullopt;
  });
}

// ---- solver ----

void solver_properties(Runner& run, std::uint64_t seed, const std::vector<Solved>& a2) {
  run.check("solver-determinism", [seed]() -> Check {
    for (const auto& f : {Fixture{5, 1, Variant::A2Eq4B}, Fixture{6, 3, Variant::HalfMinus2B}}) {
      SolverSettings s;
      s.rng_seed = seed;
      const SystemSpec spec(f.n, f.r0, f.variant, s);
      const SolveResult r1 = solve(spec), r2 = solve(spec);
      if (!(r1.u == r2.u) || r1.residual != r2.residual || r1.starts_used != r2.starts_used)
        return "n=" + std::to_string(f.n) + ": repeated solves differ";
    }
    return std::nullopt;
  });

  run.check("solver-residual-bounds", [&a2]() -> Check {
    for (const auto& s : a2) {
      if (auto c = require_converged(s)) return c;
      const double eps = s.spec.settings().epsilon;
      const RealVector p = wrapped_pair_sums(s.result.u.entries());
      for (std::size_t r = 1; r <= p.size(); ++r)
        if (r != s.fixture.r0 && std::abs(p[r - 1]) > std::sqrt(eps))
          return s.label() + " P(" + std::to_string(r) + ")=" + num(p[r - 1]);
      const double gap = s.result.a * s.result.a - 4.0 * s.result.b;
      if (std::abs(gap) > 4.0 * std::sqrt(eps)) return s.label() + " a^2-4b=" + num(gap);
    }
    return std::nullopt;
  });

  run.check("solver-homogeneity", [&a2]() -> Check {
    for (const auto& s : a2) {
      const SystemSpec free = s.spec.unpinned();
      const double base = residual(free, s.result.u);
      for (const double c : {2.0, 0.5}) {
        RealVector cu(s.result.u.entries().begin(), s.result.u.entries().end());
        for (auto& v : cu) v *= c;
        const double scaled = residual(free, GeneratorVector(cu));
        if (!rel_close(scaled, std::pow(c, 4) * base, 1e-9, std::max(scaled, 1e-300)) &&
            std::abs(scaled - std::pow(c, 4) * base) > 1e-40)
          return s.label() + " c=" + num(c) + " residual(cu)=" + num(scaled) + " c^4 residual(u)=" + num(base);
      }
    }
    return std::nullopt;
  });

  run.check("solver-pin-excludes-zero", []() -> Check {
    const SystemSpec spec(3, 1, Variant::A2Eq4B);
    const Eigen::VectorXd F = residual_terms(spec, RealVector(3, 0.0));
    if (F.squaredNorm() != 4.0) return "residual at u=0 is " + num(F.squaredNorm());
    return std::nullopt;
  });
}

// ---- enumeration ----

void enumeration_properties(Runner& run, bool quick, const std::vector<Solved>& a2, const std::vector<Solved>& half) {
  const std::size_t limit = quick ? 8 : 12;
  const std::string suffix = quick ? " (n <= 8)" : "";

  run.check("enum-min-and-kissing" + suffix, [&a2, limit]() -> Check {
    for (const auto& s : a2) {
      if (s.fixture.n > limit) continue;
      if (auto c = require_converged(s)) return c;
      const CirculantLattice lat(s.result.u);
      const EnumResult e = enumerate_short(lat);
      const double predicted = s.result.a * s.result.a / 2.0;
      const std::size_t q = kissing_by_qform(s.fixture.n, s.fixture.r0);
      if (!rel_close(e.min_norm_sq, predicted, 1e-6) || e.kissing != q)
        return s.label() + " min=" + num(e.min_norm_sq) + " (a^2/2=" + num(predicted) +
               ") kissing=" + std::to_string(e.kissing) + " q-form=" + std::to_string(q);
    }
    return std::nullopt;
  });

  run.check("enum-minimal-set-symmetry" + suffix, [&a2, &half, limit]() -> Check {
    std::vector<const Solved*> all;
    for (const auto& s : a2) all.push_back(&s);
    for (const auto& s : half) all.push_back(&s);
    for (const Solved* s : all) {
      if (s->fixture.n > limit) continue;
      if (auto c = require_converged(*s)) return c;
      const EnumResult e = enumerate_short(CirculantLattice(s->result.u));
      const auto& set = e.minimal_coeff_vectors;
      auto contains = [&set](const IntVector& x) { return std::binary_search(set.begin(), set.end(), x); };
      for (const auto& x : set) {
        IntVector neg(x);
        for (auto& v : neg) v = -v;
        IntVector shifted(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) shifted[(i + 1) % x.size()] = x[i];
        if (!contains(neg) || !contains(shifted)) return s->label() + " not closed at x=" + show(x);
      }
    }
    return std::nullopt;
  });

  run.check("enum-target-loosening", [&a2, &half]() -> Check {
    EnumOptions wide;
    wide.max_box = 12;
    for (const auto* group : {&a2, &half})
      for (const auto& s : *group) {
        if (s.fixture.n > 7) continue;
        if (auto c = require_converged(s)) return c;
        const CirculantLattice lat(s.result.u);
        const EnumResult base = enumerate_short(lat, std::nullopt, wide);
        const EnumResult loose = enumerate_short(lat, 2.0 * lat.gram().diagonal().minCoeff(), wide);
        if (base.min_norm_sq != loose.min_norm_sq || base.minimal_coeff_vectors != loose.minimal_coeff_vectors)
          return s.label() + " result changed when the target was doubled";
      }
    return std::nullopt;
  });

  run.check("enum-oracle-min", [&a2, &half]() -> Check {
    for (const auto* group : {&a2, &half})
      for (const auto& s : *group) {
        if (s.fixture.n > 8) continue;
        if (auto c = require_converged(s)) return c;
        const CirculantLattice lat(s.result.u);
        const EnumResult e = enumerate_short(lat);
        const double oracle = oracle_min(lat, e.bound_used + 1);
        if (!rel_close(oracle, e.min_norm_sq, 1e-9))
          return s.label() + " oracle=" + num(oracle) + " enumeration=" + num(e.min_norm_sq);
      }
    return std::nullopt;
  });
}

// ---- density ----

void density_properties(Runner& run, bool quick, const std::vector<Solved>& a2, const std::vector<Solved>& half) {
  run.check("density-scale-invariance", []() -> Check {
    const std::tuple<double, double, std::size_t> cases[] = {{2.0, 2.0, 3}, {2.0, 2.0, 5}, {8.0 / 3.0, 16.0 / 3.0, 4}};
    for (const auto& [m, d, n] : cases)
      for (const double c : {0.5, 3.0}) {
        const double base = center_density(m, d, n);
        const double scaled = center_density(c * c * m, std::pow(std::abs(c), static_cast<double>(n)) * d, n);
        if (!rel_close(base, scaled, 1e-12)) return "n=" + std::to_string(n) + " c=" + num(c);
      }
    return std::nullopt;
  });

  const std::size_t limit = quick ? 8 : 12;
  run.check(std::string("density-end-to-end") + (quick ? " (n <= 8)" : ""), [&a2, &half, limit]() -> Check {
    for (const auto* group : {&a2, &half})
      for (const auto& s : *group) {
        if (s.fixture.n > limit) continue;
        if (auto c = require_converged(s)) return c;
        const LatticeReport r = report_for_solution(s.spec, s.result);
        if (!r.delta || !r.delta_closed) return s.label() + ": density missing from report";
        if (std::abs(*r.delta - *r.delta_closed) > 1e-4 * *r.delta_closed)
          return s.label() + " delta=" + num(*r.delta) + " closed=" + num(*r.delta_closed);
      }
    return std::nullopt;
  });

  run.check("density-an-crossover", []() -> Check {
    for (const std::size_t n : {6, 10, 14})
      if (!(delta_closed_a4b(n, 2) < ref_An(n))) return "n=" + std::to_string(n) + " should fall below A_n";
    for (std::size_t n = 18; n <= 62; n += 4)
      if (!(delta_closed_a4b(n, 2) > ref_An(n))) return "n=" + std::to_string(n) + " should exceed A_n";
    return std::nullopt;
  });

  run.check("density-table-odd-rows", []() -> Check {
    for (const auto& row : density_table(64))
      if (row.n % 2 == 1 && row.delta_ours != ref_Dn(row.n)) return "n=" + std::to_string(row.n);
    return std::nullopt;
  });

  run.check("report-roundtrip", [&a2, &half, limit]() -> Check {
    auto close = [](const std::optional<double>& x, const std::optional<double>& y) {
      if (x.has_value() != y.has_value()) return false;
      return !x || rel_close(*x, *y, 1e-9);
    };
    for (const auto* group : {&a2, &half})
      for (const auto& s : *group) {
        if (s.fixture.n > limit) continue;
        if (auto c = require_converged(s)) return c;
        const LatticeReport solved = report_for_solution(s.spec, s.result);
        const LatticeReport analyzed = analyze_vector(s.result.u);
        if (solved.r0 != analyzed.r0 || solved.method != analyzed.method || solved.kissing != analyzed.kissing ||
            !close(solved.min_norm_sq, analyzed.min_norm_sq) || !close(solved.delta, analyzed.delta) ||
            !close(solved.delta_closed, analyzed.delta_closed) || !close(solved.det_closed, analyzed.det_closed))
          return s.label() + ": analyze disagrees with solve report";
      }
    return std::nullopt;
  });
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& options, std::ostream* log) {
  Runner run(log);
  const std::vector<Solved> a2 = solve_all(kA2Fixtures, options.seed, false);
  const std::vector<Solved> half = solve_all(kHalfFixtures, options.seed, false);
  const std::vector<Solved> singular = solve_all(kSingularFixtures, options.seed, true);

  lattice_properties(run, options.seed);
  norm_properties(run, options.seed, options.tamper, a2);
  determinant_properties(run, options.seed, a2, half, singular);
  solver_properties(run, options.seed, a2);
  enumeration_properties(run, options.quick, a2, half);
  if (options.quick) run.skip("enumeration suites with n > 8", "quick mode");
  density_properties(run, options.quick, a2, half);
  return run.finish();
}

}  // namespace cyclat
