#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "dtm/errors.hpp"
#include "dtm/params.hpp"
#include "dtm/potential.hpp"
#include "dtm/spectrum_law.hpp"

namespace dtm {

// Orbit radius as a function of continuous n for a prescribed energy law:
//   r(n)^2 = (n / xi) (n E(n) - E(1) - int_1^n E(k) dk + epsilon)
// so that xi r(1)^2 = epsilon.
class RadiusProfile {
 public:
  RadiusProfile(SpectrumSpec spec, DiscreteParams params, double epsilon,
                double n_cap = 1048576.0)
      : spec_(std::move(spec)), params_(params), epsilon_(epsilon),
        n_cap_(std::min(n_cap, spec_.max_index())) {
    if (!(std::isfinite(epsilon) && epsilon > 0.0))
      throw DomainError("integration constant epsilon must be positive");
    e1_ = spec_.energy(1.0);
  }

  const SpectrumSpec& spec() const noexcept { return spec_; }
  const DiscreteParams& params() const noexcept { return params_; }
  double epsilon() const noexcept { return epsilon_; }
  double n_cap() const noexcept { return n_cap_; }

  double radicand(double n) const {
    if (n == 1.0) return epsilon_ / params_.xi();
    const double inner = n * spec_.energy(n) - e1_ - spec_.cumulative(n) + epsilon_;
    return n * inner / params_.xi();
  }

  double radius(double n) const {
    const double rho = radicand(n);
    if (!(rho > 0.0)) throw NegativeRadicandError(n, rho);
    return std::sqrt(rho);
  }

 private:
  SpectrumSpec spec_;
  DiscreteParams params_;
  double epsilon_;
  double n_cap_;
  double e1_;
};

inline RadiusProfile radius_profile(const SpectrumSpec& spec, const DiscreteParams& params,
                                    double epsilon) {
  return RadiusProfile(spec, params, epsilon);
}

// Continuous orbit index whose profile radius equals r.
inline double invert_radius(const RadiusProfile& profile, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw RangeError("radius must be positive");
  const double r1 = profile.radius(1.0);
  if (std::abs(r - r1) <= 1e-12 * r) return 1.0;
  if (r < r1)
    throw RangeError("r = " + std::to_string(r) + " lies below the innermost orbit r(1) = " +
                     std::to_string(r1));

  const double cap = profile.n_cap();
  double lo = 1.0;
  double r_lo = r1;
  double hi = std::min(2.0, cap);
  double r_hi = profile.radius(hi);
  while (r_hi < r) {
    if (!(r_hi > r_lo))
      throw MonotonicityError("radius profile is not increasing near n = " + std::to_string(hi));
    if (hi >= cap)
      throw RangeError("r = " + std::to_string(r) + " lies beyond r(" + std::to_string(cap) +
                       ") = " + std::to_string(r_hi));
    lo = hi;
    r_lo = r_hi;
    hi = std::min(2.0 * hi, cap);
    r_hi = profile.radius(hi);
  }
  if (!(r_hi > r_lo))
    throw MonotonicityError("radius profile is not increasing near n = " + std::to_string(hi));
  if (r_hi == r) return hi;

  const double target = r * r;
  auto f = [&](double n) { return profile.radicand(n) - target; };
  auto tol = [](double a, double b) {
    return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(a, b);
  };
  std::uintmax_t iters = 400;
  auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, r_lo * r_lo - target, r_hi * r_hi - target, tol, iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

// Log-spaced grid with exact endpoints.
inline std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw DomainError("log_grid needs 0 < lo < hi, count >= 2");
  std::vector<double> g(count);
  const double span = std::log(hi / lo);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo * std::exp(span * static_cast<double>(i) / static_cast<double>(count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> profile_radius_grid(const RadiusProfile& profile, double n_lo,
                                               double n_hi, std::size_t count = 512) {
  return log_grid(profile.radius(n_lo), profile.radius(n_hi), count);
}

struct ReconstructOptions {
  Extrapolation extrapolation = Extrapolation::Error;
  // Bound on |U'(r_i) - xi r_i / n_i^2| / (xi r_i / n_i^2) at interior knots.
  double self_check_tolerance = 1e-6;
  bool enforce_self_check = true;
};

struct Reconstruction {
  PotentialModel potential;
  std::vector<double> orbit_index;
  double force_identity_residual = 0.0;
};

// Tabulates U(r) = E(n(r)) - xi r^2 / (2 n(r)^2) on r_grid, with n(r) the
// inverse of the radius profile.
inline Reconstruction reconstruct_potential(const SpectrumSpec& spec, const DiscreteParams& params,
                                            double epsilon, std::span<const double> r_grid,
                                            const ReconstructOptions& opts = {}) {
  const RadiusProfile profile(spec, params, epsilon);
  const double xi = params.xi();
  std::vector<double> rs(r_grid.begin(), r_grid.end());
  std::vector<double> us(rs.size());
  std::vector<double> ns(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double n = invert_radius(profile, rs[i]);
    ns[i] = n;
    us[i] = spec.energy(n) - xi * rs[i] * rs[i] / (2.0 * n * n);
  }
  Reconstruction out{PotentialModel::tabulated(rs, std::move(us), opts.extrapolation),
                     std::move(ns), 0.0};

  const auto& curve = out.potential.get_if<potentials::Tabulated>()->curve;
  for (std::size_t i = 1; i + 1 < rs.size(); ++i) {
    const double n = out.orbit_index[i];
    const double expected = xi * rs[i] / (n * n);
    const double rel = std::abs(curve.derivative(rs[i]) - expected) / std::abs(expected);
    out.force_identity_residual = std::max(out.force_identity_residual, rel);
  }
  if (opts.enforce_self_check && out.force_identity_residual > opts.self_check_tolerance)
    throw SelfCheckError("reconstructed force deviates from xi r / n^2 by " +
                         std::to_string(out.force_identity_residual) + " (relative)");
  return out;
}

inline PotentialModel hydrogen_potential(double gamma, double beta, double xi) {
  return PotentialModel::hydrogen_reconstructed(gamma, beta, xi);
}

inline PotentialModel oscillator_potential(double alpha, double beta, double xi) {
  return PotentialModel::oscillator_reconstructed(alpha, beta, xi);
}

// r_n = sqrt((e^{2 beta xi} n - 2 gamma) / xi); empty when the radicand is
// not positive (no real orbit at that n).
inline std::optional<double> hydrogen_orbit_radius(double n, double gamma, double beta, double xi) {
  const double rho = (std::exp(2.0 * beta * xi) * n - 2.0 * gamma) / xi;
  if (!(rho > 0.0)) return std::nullopt;
  return std::sqrt(rho);
}

// r_n = sqrt(beta n + alpha n^3 / (2 xi))
inline double oscillator_orbit_radius(double n, double alpha, double beta, double xi) {
  return std::sqrt(beta * n + alpha * n * n * n / (2.0 * xi));
}

enum class BetaKind { Hydrogen, Oscillator };

// Which epsilon -> beta relation to apply for the hydrogen family.
//   Printed: beta = ln(eps + gamma) / (2 xi)
//   Derived: beta = ln(eps + 2 gamma) / (2 xi), from xi r(1)^2 = eps.
// Only Derived reproduces the radius profile; see verify::hydrogen_beta_convention.
enum class BetaConvention { Printed, Derived };

inline std::string to_string(BetaConvention c) {
  return c == BetaConvention::Printed ? "printed" : "derived";
}

struct BetaFromEpsilon {
  double printed;
  std::optional<double> derived;
  BetaConvention verified = BetaConvention::Derived;

  double value() const { return verified == BetaConvention::Derived ? *derived : printed; }
};

inline BetaFromEpsilon beta_from_epsilon(BetaKind kind, double epsilon, double gamma_or_alpha,
                                         double xi) {
  if (!(xi > 0.0) || !(gamma_or_alpha > 0.0))
    throw DomainError("beta conversion needs positive xi and gamma/alpha");
  if (kind == BetaKind::Oscillator) {
    const double beta = (epsilon - 0.5 * gamma_or_alpha) / xi;
    return {beta, beta};
  }
  const double gamma = gamma_or_alpha;
  if (!(epsilon + gamma > 0.0))
    throw DomainError("hydrogen beta needs epsilon + gamma > 0");
  BetaFromEpsilon out{std::log(epsilon + gamma) / (2.0 * xi), std::nullopt};
  if (epsilon + 2.0 * gamma > 0.0) out.derived = std::log(epsilon + 2.0 * gamma) / (2.0 * xi);
  return out;
}

inline double epsilon_from_beta(BetaKind kind, double beta, double gamma_or_alpha, double xi,
                                BetaConvention convention = BetaConvention::Derived) {
  if (kind == BetaKind::Oscillator) return beta * xi + 0.5 * gamma_or_alpha;
  const double c = std::exp(2.0 * beta * xi);
  return convention == BetaConvention::Derived ? c - 2.0 * gamma_or_alpha : c - gamma_or_alpha;
}

}  // namespace dtm
