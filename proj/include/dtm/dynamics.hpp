#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "dtm/errors.hpp"
#include "dtm/params.hpp"
#include "dtm/potential.hpp"

namespace dtm {

// One quantum of discrete time. Every right-hand side is evaluated at the
// pre-step state.
inline PhaseState step(const PhaseState& s, const PotentialModel& pot, const DiscreteParams& params) {
  if (!(s.r > 0.0)) throw DomainError("step requires r > 0, got r = " + std::to_string(s.r));
  const double tau = params.tau();
  const double m = params.mass();
  PhaseState next;
  next.r = s.r + tau * s.p_r / m;
  next.p_r = s.p_r + tau * (centripetal_term(s.p_phi, s.r, m) - potential_derivative(pot, s.r));
  next.phi = s.phi + tau * s.p_phi / (m * s.r * s.r);
  next.p_phi = s.p_phi;
  return next;
}

struct Trajectory {
  DiscreteParams params;
  PotentialModel potential;
  std::vector<PhaseState> states;
};

inline Trajectory simulate(const PhaseState& s0, const PotentialModel& pot,
                           const DiscreteParams& params, std::size_t steps) {
  Trajectory traj{params, pot, {}};
  traj.states.reserve(steps + 1);
  traj.states.push_back(s0);
  for (std::size_t k = 0; k < steps; ++k) {
    PhaseState next;
    try {
      next = step(traj.states.back(), pot, params);
    } catch (const DomainError& e) {
      throw TrajectoryDomainError(k, e.what());
    }
    if (!(next.r > 0.0)) throw CollapseError(k + 1, next.r);
    traj.states.push_back(next);
  }
  return traj;
}

// Circular-orbit initial state: p_r = 0 and p_phi closing the orbit in n steps.
inline PhaseState circular_orbit_state(const OrbitSolution& orbit, const DiscreteParams& params) {
  return {orbit.r_n, 0.0, 0.0, closing_angular_momentum(orbit.n, orbit.r_n, params)};
}

struct ClosureTolerances {
  double phi;
  double r;
  double p_r;
};

struct ClosureReport {
  double phi_residual = 0.0;
  double r_residual = 0.0;
  double p_r_residual = 0.0;
  bool phi_ok = false;
  bool r_ok = false;
  bool p_r_ok = false;

  bool passed() const noexcept { return phi_ok && r_ok && p_r_ok; }
};

inline ClosureReport check_closure(const Trajectory& traj, int n, const ClosureTolerances& tol) {
  if (n < 1 || traj.states.size() < static_cast<std::size_t>(n) + 1)
    throw DomainError("trajectory is shorter than the requested period");
  const auto& s = traj.states;
  ClosureReport rep;
  rep.phi_residual = std::abs(s[static_cast<std::size_t>(n)].phi - s[0].phi - two_pi);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    rep.r_residual = std::max(rep.r_residual, std::abs(s[k].r - s[0].r));
    rep.p_r_residual = std::max(rep.p_r_residual, std::abs(s[k].p_r));
  }
  rep.phi_ok = rep.phi_residual <= tol.phi;
  rep.r_ok = rep.r_residual <= tol.r;
  rep.p_r_ok = rep.p_r_residual <= tol.p_r;
  return rep;
}

inline ClosureReport check_closure(const Trajectory& traj, int n, double tol) {
  return check_closure(traj, n, ClosureTolerances{tol, tol, tol});
}

}  // namespace dtm
