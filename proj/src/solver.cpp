#include "cyclat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "cyclat/detail/compensated.hpp"
#include "cyclat/error.hpp"

namespace cyclat {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::A2Eq4B: return "a2eq4b";
    case Variant::HalfMinus2B: return "half-minus-2b";
    case Variant::Half6B: return "half-6b";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  if (text == "a2eq4b") return Variant::A2Eq4B;
  if (text == "half-minus-2b") return Variant::HalfMinus2B;
  if (text == "half-6b") return Variant::Half6B;
  fail(ErrorKind::InvalidSpec, "unknown variant '" + std::string(text) + "'");
}

SystemSpec::SystemSpec(std::size_t n, std::size_t r0, Variant variant, SolverSettings settings)
    : n_(n), r0_(r0), variant_(variant), settings_(settings) {
  if (n < 2) fail(ErrorKind::InvalidSpec, "dimension must be >= 2");
  if (r0 < 1 || r0 > n / 2) fail(ErrorKind::InvalidSpec, "r0 outside 1..floor(n/2)");
  if (!(settings_.epsilon > 0.0)) fail(ErrorKind::InvalidSpec, "epsilon must be positive");
  if (settings_.max_starts == 0) fail(ErrorKind::InvalidSpec, "max_starts must be positive");
  if (variant == Variant::A2Eq4B) {
    if (r0 > (n - 1) / 2)
      fail(ErrorKind::InvalidSpec, "a2eq4b requires r0 <= floor((n-1)/2); use a half variant for r0 = n/2");
    if ((n / std::gcd(r0, n)) % 2 == 0 && !settings_.allow_singular)
      fail(ErrorKind::InvalidSpec,
           "n/gcd(r0,n) is even: every a2eq4b solution is singular (pass allow-singular to override)");
  } else if (n % 2 != 0 || 2 * r0 != n) {
    fail(ErrorKind::InvalidSpec, "half variants require n even and r0 = n/2");
  }
}

SystemSpec SystemSpec::unpinned() const {
  SystemSpec copy = *this;
  copy.settings_.scale_pin.reset();
  return copy;
}

namespace {

std::size_t vanishing_limit(const SystemSpec& spec) {
  return spec.variant() == Variant::A2Eq4B ? spec.n() / 2 : spec.n() / 2 - 1;
}

std::size_t term_count(const SystemSpec& spec) {
  const std::size_t lim = vanishing_limit(spec);
  const std::size_t vanishing = spec.variant() == Variant::A2Eq4B ? lim - 1 : lim;
  return 1 + vanishing + (spec.settings().scale_pin ? 1 : 0);
}

// Wrapped pair sum as a cyclic correlation: for r != n/2 every pair at
// distance r or n-r is (i, i+r mod n) for exactly one i.
template <class T>
T cyclic_pair_sum(std::span<const T> u, std::size_t r) {
  const std::size_t n = u.size();
  detail::BasicCompensatedSum<T> s;
  if (2 * r == n) {
    for (std::size_t i = 0; i < n / 2; ++i) s.add_product(u[i], u[i + r]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s.add_product(u[i], u[(i + r) % n]);
  }
  return s.value();
}

template <class T>
T constraint_term(const SystemSpec& spec, std::span<const T> u) {
  const std::size_t n = u.size();
  detail::BasicCompensatedSum<T> s;
  for (std::size_t i = 0; i < n; ++i) s.add_product(u[i], u[i]);
  switch (spec.variant()) {
    case Variant::A2Eq4B:
      // |u|^2 - 2 <u, rot^r0 u>
      for (std::size_t i = 0; i < n; ++i) s.add_product(T(-2) * u[i], u[(i + spec.r0()) % n]);
      break;
    case Variant::HalfMinus2B:
    case Variant::Half6B: {
      // a^2 + 2b = |u|^2 + 4 sum_{i<j} u_i u_j ;  a^2 - 6b = |u|^2 - 4 sum_{i<j} u_i u_j
      const T c = spec.variant() == Variant::HalfMinus2B ? T(4) : T(-4);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s.add_product(c * u[i], u[j]);
      break;
    }
  }
  return s.value();
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> terms_impl(const SystemSpec& spec, std::span<const T> u) {
  if (u.size() != spec.n()) fail(ErrorKind::InvalidInput, "vector length does not match system dimension");
  Eigen::Matrix<T, Eigen::Dynamic, 1> F(static_cast<Eigen::Index>(term_count(spec)));
  Eigen::Index k = 0;
  F(k++) = constraint_term(spec, u);
  for (std::size_t r = 1; r <= vanishing_limit(spec); ++r) {
    if (spec.variant() == Variant::A2Eq4B && r == spec.r0()) continue;
    F(k++) = cyclic_pair_sum(u, r);
  }
  if (const auto& pin = spec.settings().scale_pin) {
    detail::BasicCompensatedSum<T> s;
    for (T v : u) s.add(-v);
    s.add(-static_cast<T>(*pin));
    F(k++) = s.value();
  }
  return F;
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RealVector initial_vector(const SystemSpec& spec, std::size_t start) {
  std::mt19937_64 gen(splitmix64(spec.settings().rng_seed ^ splitmix64(start)));
  RealVector u(spec.n());
  for (auto& v : u) v = -2.0 + 4.0 * uniform01(gen);
  return u;
}

double objective(const SystemSpec& spec, std::span<const double> u) {
  return residual_terms(spec, u).squaredNorm();
}

Eigen::Map<const Eigen::VectorXd> as_eigen(const RealVector& u) {
  return {u.data(), static_cast<Eigen::Index>(u.size())};
}

// Levenberg-Marquardt on the residual vector. Each step solves the damped
// problem min |J d + F|^2 + mu |d|^2 by QR of the stacked matrix.
RealVector local_minimize(const SystemSpec& spec, RealVector u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  Eigen::VectorXd F = residual_terms(spec, u);
  double f = F.squaredNorm();
  Eigen::MatrixXd J = residual_jacobian(spec, u);
  const auto m = J.rows();

  double mu = 1e-3 * std::max((J.transpose() * J).diagonal().maxCoeff(), 1e-12);
  double nu = 2.0;

  Eigen::MatrixXd A(m + n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + n);

  for (int iter = 0; iter < 10000 && f > 0.0; ++iter) {
    A.topRows(m) = J;
    A.bottomRows(n) = std::sqrt(mu) * Eigen::MatrixXd::Identity(n, n);
    rhs.head(m) = -F;
    const Eigen::VectorXd delta = A.householderQr().solve(rhs);
    const double unorm = as_eigen(u).norm();
    if (delta.norm() <= 1e-15 * (unorm + 1e-15)) break;

    RealVector trial(u);
    for (Eigen::Index i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += delta(i);
    const Eigen::VectorXd F_new = residual_terms(spec, trial);
    const double f_new = F_new.squaredNorm();

    if (f_new < f) {
      const double predicted = f - (F + J * delta).squaredNorm();
      const double rho = predicted > 0.0 ? (f - f_new) / predicted : 1.0;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      mu = std::max(mu, 1e-300);
      nu = 2.0;
      u = std::move(trial);
      F = F_new;
      f = f_new;
      J = residual_jacobian(spec, u);
    } else {
      mu *= nu;
      nu *= 2.0;
      if (mu > 1e30 || !std::isfinite(mu)) break;
    }
  }

  // Minimum-norm Gauss-Newton polish with the iterate and residual carried in
  // long double. Near singular solution sets the residual is quadratic in the
  // distance along the degenerate direction, so in double precision the
  // iteration stalls with that distance near sqrt(eps); the wider iterate
  // moves the stall point well below it before rounding back.
  std::vector<long double> v(u.begin(), u.end());
  auto Fl = terms_impl<long double>(spec, v);
  long double fl = Fl.squaredNorm();
  for (int iter = 0; iter < 200 && fl > 0.0L; ++iter) {
    const Eigen::VectorXd rhs_polish = -Fl.cast<double>();
    const Eigen::VectorXd delta = J.completeOrthogonalDecomposition().solve(rhs_polish);
    std::vector<long double> trial(v);
    for (Eigen::Index i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += delta(i);
    auto Fl_new = terms_impl<long double>(spec, trial);
    const long double fl_new = Fl_new.squaredNorm();
    if (!(fl_new < fl)) break;
    v = std::move(trial);
    Fl = std::move(Fl_new);
    fl = fl_new;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(v[i]);
    J = residual_jacobian(spec, u);
  }
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = static_cast<double>(v[i]);
  return u;
}

}  // namespace

Eigen::VectorXd residual_terms(const SystemSpec& spec, std::span<const double> u) {
  return terms_impl<double>(spec, u);
}

Eigen::MatrixXd residual_jacobian(const SystemSpec& spec, std::span<const double> u) {
  const std::size_t n = spec.n();
  if (u.size() != n) fail(ErrorKind::InvalidInput, "vector length does not match system dimension");
  Eigen::MatrixXd J(static_cast<Eigen::Index>(term_count(spec)), static_cast<Eigen::Index>(n));
  const double sum = std::accumulate(u.begin(), u.end(), 0.0);
  auto partner_sum = [&](std::size_t k, std::size_t r) {
    if (2 * r == n) return u[(k + r) % n];
    return u[(k + r) % n] + u[(k + n - r) % n];
  };

  Eigen::Index row = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto c = static_cast<Eigen::Index>(k);
    switch (spec.variant()) {
      case Variant::A2Eq4B: J(row, c) = 2.0 * u[k] - 2.0 * partner_sum(k, spec.r0()); break;
      case Variant::HalfMinus2B: J(row, c) = 4.0 * sum - 2.0 * u[k]; break;
      case Variant::Half6B: J(row, c) = 6.0 * u[k] - 4.0 * sum; break;
    }
  }
  ++row;
  for (std::size_t r = 1; r <= vanishing_limit(spec); ++r) {
    if (spec.variant() == Variant::A2Eq4B && r == spec.r0()) continue;
    for (std::size_t k = 0; k < n; ++k) J(row, static_cast<Eigen::Index>(k)) = partner_sum(k, r);
    ++row;
  }
  if (spec.settings().scale_pin) {
    J.row(row).setConstant(-1.0);
  }
  return J;
}

double residual(const SystemSpec& spec, const GeneratorVector& u) {
  return objective(spec, u.entries());
}

SolveResult solve(const SystemSpec& spec) {
  const auto& settings = spec.settings();
  std::optional<RealVector> best;
  double best_value = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  bool converged = false;

  for (std::size_t start = 0; start < settings.max_starts; ++start) {
    ++used;
    RealVector u = local_minimize(spec, initial_vector(spec, start));
    const double value = objective(spec, u);
    if (!std::isfinite(value)) continue;
    bool pin_ok = true;
    if (settings.scale_pin) {
      const double a = -std::accumulate(u.begin(), u.end(), 0.0);
      pin_ok = std::abs(a - *settings.scale_pin) <= 1e-6;
    }
    if (value < best_value) {
      best_value = value;
      best = u;
    }
    if (value < settings.epsilon && pin_ok) {
      best_value = value;
      best = std::move(u);
      converged = true;
      break;
    }
  }
  if (!best) best = initial_vector(spec, 0);

  GeneratorVector gv(std::move(*best));
  const VietaCoefficients v = vieta(gv);
  return SolveResult{gv, objective(spec, gv.entries()), v.a, v.b, used, converged};
}

std::size_t r0_optimal(std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidDimension, "dimension must be >= 2");
  if ((n & (n - 1)) == 0)
    fail(ErrorKind::NoValidR0, "n = " + std::to_string(n) + " is a power of 2; no r0 gives n/gcd(r0,n) odd");
  return n & (~n + 1);
}

}  // namespace cyclat
