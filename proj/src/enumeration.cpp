#include "cyclat/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "cyclat/error.hpp"
#include "cyclat/norms.hpp"

namespace cyclat {

namespace {

double squared_norm(const RealVector& w) {
  double s = 0.0;
  for (double v : w) s += v * v;
  return s;
}

bool is_zero(const IntVector& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

struct Candidate {
  IntVector x;
  double norm_sq;
};

struct Partition {
  std::vector<Candidate> candidates;
  double best = std::numeric_limits<double>::infinity();
};

// Depth-first walk over the upper-triangular factor R (Gram = R^T R), last
// coordinate first. The last coordinate is fixed per partition.
class CholeskyWalk {
 public:
  CholeskyWalk(const Eigen::MatrixXd& R, double radius, std::int64_t box, double tie_rel)
      : R_(R), n_(static_cast<std::size_t>(R.rows())), radius_(radius), box_(box), tie_rel_(tie_rel), x_(n_, 0) {}

  Partition run(std::int64_t top_value) {
    Partition out;
    const std::size_t top = n_ - 1;
    x_[top] = top_value;
    const double r = R_(static_cast<Eigen::Index>(top), static_cast<Eigen::Index>(top));
    const double term = r * r * static_cast<double>(top_value) * static_cast<double>(top_value);
    if (term <= bound(out)) descend(top, term, out);
    return out;
  }

 private:
  double bound(const Partition& p) const {
    const double b = std::min(radius_, p.best * (1.0 + 4.0 * tie_rel_));
    return b * (1.0 + 1e-12) + 1e-300;
  }

  void descend(std::size_t level, double partial, Partition& out) {
    if (level == 0) {
      if (is_zero(x_)) return;
      out.candidates.push_back({x_, partial});
      out.best = std::min(out.best, partial);
      return;
    }
    const std::size_t i = level - 1;
    const auto ii = static_cast<Eigen::Index>(i);
    const double rii = R_(ii, ii);
    double center = 0.0;
    for (std::size_t j = i + 1; j < n_; ++j)
      center -= R_(ii, static_cast<Eigen::Index>(j)) / rii * static_cast<double>(x_[j]);

    const double rem = bound(out) - partial;
    if (rem < 0.0) return;
    const double half_width = std::sqrt(rem) / rii;
    const auto lo = std::max<std::int64_t>(-box_, static_cast<std::int64_t>(std::ceil(center - half_width)));
    const auto hi = std::min<std::int64_t>(box_, static_cast<std::int64_t>(std::floor(center + half_width)));
    for (std::int64_t v = lo; v <= hi; ++v) {
      const double d = static_cast<double>(v) - center;
      const double next = partial + rii * rii * d * d;
      if (next > bound(out)) continue;
      x_[i] = v;
      descend(i, next, out);
    }
    x_[i] = 0;
  }

  const Eigen::MatrixXd& R_;
  std::size_t n_;
  double radius_;
  std::int64_t box_;
  double tie_rel_;
  IntVector x_;
};

}  // namespace

RealVector gram_eigenvalues(const CirculantLattice& lat) {
  const std::size_t n = lat.dim();
  const auto u = lat.u().entries();
  RealVector mu(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> lambda{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      lambda += u[k] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    mu[j] = std::norm(lambda);
  }
  return mu;
}

EnumResult enumerate_short(const CirculantLattice& lat, std::optional<double> target,
                           const EnumOptions& options) {
  const std::size_t n = lat.dim();
  if (n > options.max_dim)
    fail(ErrorKind::BudgetExceeded,
         "dimension " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(options.max_dim));

  const RealVector mu = gram_eigenvalues(lat);
  const double mu_min = *std::min_element(mu.begin(), mu.end());
  const double mu_max = *std::max_element(mu.begin(), mu.end());
  if (!(mu_min > 1e-12 * mu_max)) fail(ErrorKind::SingularLattice, "Gram matrix is numerically singular");

  double T = 0.0;
  if (target) {
    if (!(*target > 0.0)) fail(ErrorKind::InvalidInput, "enumeration target must be positive");
    T = *target;
  } else {
    T = lat.gram().diagonal().minCoeff();
  }
  const double radius = T * (1.0 + 4.0 * options.tie_rel);
  const auto box = static_cast<std::int64_t>(std::ceil(std::sqrt(radius / mu_min)));
  if (box > options.max_box)
    fail(ErrorKind::BudgetExceeded,
         "coordinate bound " + std::to_string(box) + " exceeds cap " + std::to_string(options.max_box));

  const Eigen::LLT<Eigen::MatrixXd> llt(lat.gram());
  if (llt.info() != Eigen::Success) fail(ErrorKind::SingularLattice, "Cholesky factorisation failed");
  const Eigen::MatrixXd R = llt.matrixU();

  const auto top = static_cast<Eigen::Index>(n - 1);
  const auto top_extent = std::min<std::int64_t>(
      box, static_cast<std::int64_t>(std::floor(std::sqrt(radius * (1.0 + 1e-12)) / R(top, top))));

  // One partition per value of the last coordinate; merged below in a fixed
  // order so the result does not depend on scheduling.
  std::vector<std::future<Partition>> jobs;
  for (std::int64_t v = -top_extent; v <= top_extent; ++v) {
    jobs.push_back(std::async(std::launch::async, [&R, radius, box, &options, v] {
      CholeskyWalk walk(R, radius, box, options.tie_rel);
      return walk.run(v);
    }));
  }

  std::vector<Candidate> all;
  for (auto& job : jobs) {
    Partition p = job.get();
    for (auto& c : p.candidates) all.push_back(std::move(c));
  }
  if (all.empty()) fail(ErrorKind::NumericInconsistency, "no lattice vector found within the basis norm");

  for (auto& c : all) c.norm_sq = squared_norm(lat.lattice_vector(c.x));
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : all) best = std::min(best, c.norm_sq);

  EnumResult result;
  result.min_norm_sq = best;
  result.bound_used = box;
  for (auto& c : all)
    if (c.norm_sq <= best * (1.0 + options.tie_rel)) result.minimal_coeff_vectors.push_back(std::move(c.x));
  std::sort(result.minimal_coeff_vectors.begin(), result.minimal_coeff_vectors.end());
  result.kissing = result.minimal_coeff_vectors.size();
  return result;
}

std::size_t kissing_by_qform(std::size_t n, std::size_t r0) {
  if (n < 2) fail(ErrorKind::InvalidSpec, "dimension must be >= 2");
  if (r0 < 1 || r0 > (n - 1) / 2) fail(ErrorKind::InvalidSpec, "Q-form needs 1 <= r0 <= floor((n-1)/2)");
  const std::size_t g = std::gcd(r0, n);
  const std::size_t cycle = n / g;
  if (cycle % 2 == 0) fail(ErrorKind::InvalidSpec, "n/gcd(r0,n) must be odd");

  double nu_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((r0 * j) % n) / static_cast<double>(n);
    nu_min = std::min(nu_min, 1.0 + std::cos(angle));
  }
  const auto box = static_cast<std::int64_t>(std::ceil(std::sqrt(1.0 / nu_min)));

  // Visit coordinates along the cycles i, i+r0, i+2r0, ... (mod n). Every
  // pair {i, i+r0 mod n} of the wrapped pair sum joins two consecutive
  // entries of one cycle, and 2 Q x = sum over those pairs of (x_i + x_j)^2,
  // so the running sum over closed pairs never decreases and a partial
  // assignment can be dropped once it passes 2.
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t c = 0; c < g; ++c)
    for (std::size_t k = 0; k < cycle; ++k) order.push_back((c + k * r0) % n);

  IntVector x(n, 0);
  std::size_t count = 0;
  auto walk = [&](auto&& self, std::size_t pos, std::int64_t partial) -> void {
    if (pos == n) {
      if (partial != 2) return;
      if (q_form_eval(n, r0, x) != 1)
        fail(ErrorKind::NumericInconsistency, "pair decomposition disagrees with the Q-form");
      ++count;
      return;
    }
    const std::size_t idx = order[pos];
    const std::size_t k = pos % cycle;
    for (std::int64_t v = -box; v <= box; ++v) {
      x[idx] = v;
      std::int64_t next = partial;
      if (k > 0) {
        const std::int64_t s = x[order[pos - 1]] + v;
        next += s * s;
      }
      if (k == cycle - 1) {
        const std::int64_t s = x[order[pos - cycle + 1]] + v;
        next += s * s;
      }
      if (next > 2) continue;
      self(self, pos + 1, next);
    }
    x[idx] = 0;
  };
  walk(walk, 0, 0);
  return count;
}

double oracle_min(const CirculantLattice& lat, std::int64_t box) {
  if (box < 1) fail(ErrorKind::InvalidInput, "oracle box must be >= 1");
  const std::size_t n = lat.dim();
  const Eigen::MatrixXd& G = lat.generator();

  auto scan = [&lat, &G, n, box](std::int64_t lead) {
    IntVector x(n, -box);
    x[n - 1] = lead;
    RealVector w = lat.lattice_vector(x);
    std::size_t nonzero = static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](auto v) { return v != 0; }));
    double best = std::numeric_limits<double>::infinity();
    while (true) {
      if (nonzero > 0) best = std::min(best, squared_norm(w));
      std::size_t d = 0;
      while (d + 1 < n && x[d] == box) {
        x[d] = -box;
        ++d;
      }
      if (d + 1 == n) break;
      const bool was_zero = x[d] == 0;
      ++x[d];
      if (d == 0) {
        for (std::size_t j = 0; j < n; ++j) w[j] += G(0, static_cast<Eigen::Index>(j));
      } else {
        w = lat.lattice_vector(x);
      }
      if (d == 0) {
        if (was_zero) ++nonzero;
        else if (x[d] == 0) --nonzero;
      } else {
        nonzero = static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](auto v) { return v != 0; }));
      }
    }
    return best;
  };

  std::vector<std::future<double>> jobs;
  for (std::int64_t v = -box; v <= box; ++v) jobs.push_back(std::async(std::launch::async, scan, v));
  double best = std::numeric_limits<double>::infinity();
  for (auto& j : jobs) best = std::min(best, j.get());
  return best;
}

}  // namespace cyclat
