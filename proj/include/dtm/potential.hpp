#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "dtm/errors.hpp"
#include "dtm/interpolation.hpp"

namespace dtm {

enum class Extrapolation { Error, ClampSlope };

namespace potentials {

// U = -alpha / r
struct Coulomb {
  double alpha;
};

// U = alpha r
struct Linear {
  double alpha;
};

// U = alpha ln r
struct Logarithmic {
  double alpha;
};

// U = alpha r^sigma, sigma in (-2, 2) \ {0}, alpha sigma > 0
struct Polynomial {
  double alpha;
  double sigma;
};

// U = -exp(4 beta xi) / (4 gamma + 2 xi r^2); nonsingular at the origin.
struct HydrogenReconstructed {
  double gamma;
  double beta;
  double xi;
};

// Potential whose circular orbits have energies alpha * n. With beta = 0 it is
// (3/2) (r^2 alpha^2 xi / 4)^(1/3); otherwise it goes through the real root
// of the cubic r^2 = beta n + alpha n^3 / (2 xi).
struct OscillatorReconstructed {
  double alpha;
  double beta;
  double xi;
};

struct Tabulated {
  MonotoneCubic curve;
  Extrapolation extrapolation;
};

}  // namespace potentials

// Real root n(r) of alpha n^3 / (2 xi) + beta n - r^2 = 0, written through
// the resolvent V(r) = 3^(1/3) (9 r^2 alpha^2 xi
//                     + sqrt(3) sqrt(27 r^4 alpha^4 xi^2 + 8 alpha^3 beta^3 xi^3))^(1/3).
inline double oscillator_resolvent(double r, double alpha, double beta, double xi) {
  const double a2xi = alpha * alpha * xi;
  const double disc = 27.0 * r * r * r * r * a2xi * a2xi +
                      8.0 * alpha * alpha * alpha * beta * beta * beta * xi * xi * xi;
  return std::cbrt(3.0 * (9.0 * r * r * a2xi + std::sqrt(3.0) * std::sqrt(disc)));
}

inline double oscillator_orbit_index(double r, double alpha, double beta, double xi) {
  const double v = oscillator_resolvent(r, alpha, beta, xi);
  return v / (3.0 * alpha) - 2.0 * beta * xi / v;
}

// Evaluatable central potential. Immutable after construction; the factories
// reject parameters outside each family's admissible domain.
class PotentialModel {
 public:
  using Variant =
      std::variant<potentials::Coulomb, potentials::Linear, potentials::Logarithmic,
                   potentials::Polynomial, potentials::HydrogenReconstructed,
                   potentials::OscillatorReconstructed, potentials::Tabulated>;

  static PotentialModel coulomb(double alpha) {
    require_finite(alpha, "alpha");
    return PotentialModel(potentials::Coulomb{alpha});
  }
  static PotentialModel linear(double alpha) {
    require_finite(alpha, "alpha");
    return PotentialModel(potentials::Linear{alpha});
  }
  static PotentialModel logarithmic(double alpha) {
    require_finite(alpha, "alpha");
    return PotentialModel(potentials::Logarithmic{alpha});
  }
  static PotentialModel polynomial(double alpha, double sigma) {
    require_finite(alpha, "alpha");
    require_finite(sigma, "sigma");
    if (!(sigma > -2.0 && sigma < 2.0) || sigma == 0.0)
      throw DomainError("polynomial potential requires sigma in (-2, 2) excluding 0, got " +
                        std::to_string(sigma));
    if (!(alpha * sigma > 0.0))
      throw DomainError("polynomial potential requires alpha * sigma > 0");
    return PotentialModel(potentials::Polynomial{alpha, sigma});
  }
  static PotentialModel hydrogen_reconstructed(double gamma, double beta, double xi) {
    require_positive(gamma, "gamma");
    require_finite(beta, "beta");
    require_positive(xi, "xi");
    if (!std::isfinite(std::exp(4.0 * beta * xi)))
      throw DomainError("exp(4 beta xi) overflows; choose a smaller beta");
    return PotentialModel(potentials::HydrogenReconstructed{gamma, beta, xi});
  }
  static PotentialModel oscillator_reconstructed(double alpha, double beta, double xi) {
    require_positive(alpha, "alpha");
    require_finite(beta, "beta");
    if (beta < 0.0) throw DomainError("oscillator potential requires beta >= 0");
    require_positive(xi, "xi");
    return PotentialModel(potentials::OscillatorReconstructed{alpha, beta, xi});
  }
  static PotentialModel tabulated(std::vector<double> r_grid, std::vector<double> u_values,
                                  Extrapolation extrapolation = Extrapolation::Error) {
    if (!r_grid.empty() && !(r_grid.front() >= 0.0))
      throw DomainError("tabulated radii must be nonnegative");
    return PotentialModel(potentials::Tabulated{
        MonotoneCubic(std::move(r_grid), std::move(u_values)), extrapolation});
  }

  const Variant& variant() const noexcept { return v_; }

  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::string kind() const {
    return std::visit(
        [](const auto& p) -> std::string {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, potentials::Coulomb>) return "coulomb";
          else if constexpr (std::is_same_v<T, potentials::Linear>) return "linear";
          else if constexpr (std::is_same_v<T, potentials::Logarithmic>) return "logarithmic";
          else if constexpr (std::is_same_v<T, potentials::Polynomial>) return "polynomial";
          else if constexpr (std::is_same_v<T, potentials::HydrogenReconstructed>)
            return "hydrogen-reconstructed";
          else if constexpr (std::is_same_v<T, potentials::OscillatorReconstructed>)
            return "oscillator-reconstructed";
          else return "tabulated";
        },
        v_);
  }

 private:
  explicit PotentialModel(Variant v) : v_(std::move(v)) {}

  static void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
  }
  static void require_positive(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) throw DomainError(std::string(name) + " must be positive");
  }

  Variant v_;
};

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] inline void outside(const char* kind, double r) {
  throw DomainError(std::string(kind) + " potential is undefined at r = " + std::to_string(r));
}

inline void check_tabulated(const potentials::Tabulated& t, double r) {
  if (t.extrapolation == Extrapolation::Error && (r < t.curve.front() || r > t.curve.back()))
    throw DomainError("r = " + std::to_string(r) + " lies outside the tabulated grid [" +
                      std::to_string(t.curve.front()) + ", " + std::to_string(t.curve.back()) +
                      "]");
}

}  // namespace detail

inline double evaluate_potential(const PotentialModel& pot, double r) {
  using namespace potentials;
  if (!(r >= 0.0) || !std::isfinite(r)) detail::outside(pot.kind().c_str(), r);
  return std::visit(
      detail::overloaded{
          [r](const Coulomb& p) {
            if (r == 0.0) detail::outside("coulomb", r);
            return -p.alpha / r;
          },
          [r](const Linear& p) { return p.alpha * r; },
          [r](const Logarithmic& p) {
            if (r == 0.0) detail::outside("logarithmic", r);
            return p.alpha * std::log(r);
          },
          [r](const Polynomial& p) {
            if (r == 0.0 && p.sigma < 0.0) detail::outside("polynomial", r);
            return p.alpha * std::pow(r, p.sigma);
          },
          [r](const HydrogenReconstructed& p) {
            return -std::exp(4.0 * p.beta * p.xi) / (4.0 * p.gamma + 2.0 * r * r * p.xi);
          },
          [r](const OscillatorReconstructed& p) {
            if (p.beta == 0.0)
              return 1.5 * std::cbrt(r * r * p.alpha * p.alpha * p.xi / 4.0);
            if (r == 0.0) detail::outside("oscillator-reconstructed", r);
            const double v = oscillator_resolvent(r, p.alpha, p.beta, p.xi);
            const double k = p.alpha * p.beta * p.xi;
            const double w = v * v - 6.0 * k;
            return v / 3.0 - 2.0 * k / v -
                   9.0 * r * r * v * v * p.alpha * p.alpha * p.xi / (2.0 * w * w);
          },
          [r](const Tabulated& t) {
            detail::check_tabulated(t, r);
            if (r < t.curve.front())
              return t.curve.y().front() + t.curve.slopes().front() * (r - t.curve.front());
            if (r > t.curve.back())
              return t.curve.y().back() + t.curve.slopes().back() * (r - t.curve.back());
            return t.curve(r);
          }},
      pot.variant());
}

inline double potential_derivative(const PotentialModel& pot, double r) {
  using namespace potentials;
  if (!(r >= 0.0) || !std::isfinite(r)) detail::outside(pot.kind().c_str(), r);
  return std::visit(
      detail::overloaded{
          [r](const Coulomb& p) {
            if (r == 0.0) detail::outside("coulomb", r);
            return p.alpha / (r * r);
          },
          [](const Linear& p) { return p.alpha; },
          [r](const Logarithmic& p) {
            if (r == 0.0) detail::outside("logarithmic", r);
            return p.alpha / r;
          },
          [r](const Polynomial& p) {
            if (r == 0.0) {
              if (p.sigma < 1.0) detail::outside("polynomial", r);
              return p.sigma == 1.0 ? p.alpha : 0.0;
            }
            return p.alpha * p.sigma * std::pow(r, p.sigma - 1.0);
          },
          [r](const HydrogenReconstructed& p) {
            const double d = 4.0 * p.gamma + 2.0 * r * r * p.xi;
            return std::exp(4.0 * p.beta * p.xi) * 4.0 * p.xi * r / (d * d);
          },
          [r](const OscillatorReconstructed& p) {
            if (r == 0.0) detail::outside("oscillator-reconstructed", r);
            if (p.beta == 0.0) return std::cbrt(p.alpha * p.alpha * p.xi / 4.0) / std::cbrt(r);
            // dU/dr = dU/dr|_V + dU/dV * dV/dr on the resolvent form.
            const double a2xi = p.alpha * p.alpha * p.xi;
            const double v = oscillator_resolvent(r, p.alpha, p.beta, p.xi);
            const double k = p.alpha * p.beta * p.xi;
            const double w = v * v - 6.0 * k;
            const double disc = 27.0 * r * r * r * r * a2xi * a2xi + 8.0 * k * k * k;
            const double dv3 = 3.0 * (18.0 * r * a2xi +
                                      std::sqrt(3.0) * 54.0 * r * r * r * a2xi * a2xi /
                                          std::sqrt(disc));
            const double dv = dv3 / (3.0 * v * v);
            const double du_dr = -9.0 * r * v * v * a2xi / (w * w);
            const double du_dv =
                1.0 / 3.0 + 2.0 * k / (v * v) + 9.0 * r * r * a2xi * v * (v * v + 6.0 * k) / (w * w * w);
            return du_dr + du_dv * dv;
          },
          [r](const Tabulated& t) {
            detail::check_tabulated(t, r);
            if (r < t.curve.front()) return t.curve.slopes().front();
            if (r > t.curve.back()) return t.curve.slopes().back();
            return t.curve.derivative(r);
          }},
      pot.variant());
}

struct PhysicalCheckOptions {
  // |F(r_max)| must fall below this fraction of the largest sampled |F|.
  double vanishing_ratio = 1e-4;
};

struct PhysicalReport {
  bool attractive = false;
  bool monotone = false;
  bool vanishing = false;
  double first_repulsive_r = std::numeric_limits<double>::quiet_NaN();
  double first_nonmonotone_r = std::numeric_limits<double>::quiet_NaN();
  double tail_ratio = std::numeric_limits<double>::quiet_NaN();

  // The forward solver only needs attraction and monotone force.
  bool admissible() const noexcept { return attractive && monotone; }
  bool passed() const noexcept { return attractive && monotone && vanishing; }
};

// Samples F = -U' on a log-spaced grid over [r_min, r_max].
inline PhysicalReport check_physical(const PotentialModel& pot, double r_min, double r_max,
                                     int samples, PhysicalCheckOptions opts = {}) {
  if (!(r_min > 0.0 && r_max > r_min && std::isfinite(r_max)))
    throw DomainError("check_physical requires 0 < r_min < r_max");
  if (samples < 3) throw DomainError("check_physical requires at least 3 samples");

  PhysicalReport rep;
  rep.attractive = true;
  rep.monotone = true;
  const double ratio = std::log(r_max / r_min);
  double prev_abs = 0.0;
  double max_abs = 0.0;
  double last_abs = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = i == samples - 1 ? r_max : r_min * std::exp(ratio * i / (samples - 1));
    const double force = -potential_derivative(pot, r);
    const double mag = std::abs(force);
    if (!(force < 0.0) && rep.attractive) {
      rep.attractive = false;
      rep.first_repulsive_r = r;
    }
    if (i > 0 && !(mag < prev_abs) && rep.monotone) {
      rep.monotone = false;
      rep.first_nonmonotone_r = r;
    }
    prev_abs = mag;
    max_abs = std::max(max_abs, mag);
    last_abs = mag;
  }
  rep.tail_ratio = max_abs > 0.0 ? last_abs / max_abs : 0.0;
  rep.vanishing = rep.tail_ratio <= opts.vanishing_ratio;
  return rep;
}

}  // namespace dtm
