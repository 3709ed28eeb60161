#pragma once

#include <cmath>
#include <numbers>

#include "dtm/errors.hpp"

namespace dtm {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Discreteness quantum and particle mass. xi = 4 pi^2 m / tau^2 is derived
// once at construction and cannot be set independently.
class DiscreteParams {
 public:
  DiscreteParams(double tau, double mass) : tau_(tau), mass_(mass) {
    if (!(std::isfinite(tau) && tau > 0.0))
      throw DomainError("tau must be a positive finite number");
    if (!(std::isfinite(mass) && mass > 0.0))
      throw DomainError("mass must be a positive finite number");
    xi_ = 4.0 * std::numbers::pi * std::numbers::pi * mass_ / (tau_ * tau_);
  }

  // Parameters whose xi equals the requested value, at unit mass.
  static DiscreteParams with_xi(double xi, double mass = 1.0) {
    if (!(std::isfinite(xi) && xi > 0.0)) throw DomainError("xi must be positive");
    return DiscreteParams(two_pi * std::sqrt(mass / xi), mass);
  }

  double tau() const noexcept { return tau_; }
  double mass() const noexcept { return mass_; }
  double xi() const noexcept { return xi_; }

 private:
  double tau_;
  double mass_;
  double xi_;
};

// Polar phase-space point. phi is cumulative and never wrapped.
struct PhaseState {
  double r = 0.0;
  double p_r = 0.0;
  double phi = 0.0;
  double p_phi = 0.0;

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

// One stationary circular orbit.
struct OrbitSolution {
  int n = 1;
  double r_n = 0.0;
  double e_n = 0.0;
  double p_phi = 0.0;
};

// Angular momentum that closes a circular orbit of radius r in n steps.
inline double closing_angular_momentum(int n, double r, const DiscreteParams& params) {
  return two_pi * params.mass() * r * r / (static_cast<double>(n) * params.tau());
}

// p_phi^2 / (m r^3), evaluated exactly as the stepper does.
inline double centripetal_term(double p_phi, double r, double mass) {
  return p_phi * p_phi / (mass * (r * r * r));
}

}  // namespace dtm
