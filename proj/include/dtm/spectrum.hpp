#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dtm/catalog.hpp"
#include "dtm/errors.hpp"
#include "dtm/params.hpp"
#include "dtm/potential.hpp"
#include "dtm/roots.hpp"

namespace dtm {

struct SolverOptions {
  // Relative bound on the quantization residual xi r / n^2 - U'(r).
  double tolerance = 1e-12;
  // Relative bracket width at which refinement stops.
  double bracket_width = 1e-14;
  // Use the catalog closed form when the potential has one.
  bool use_closed_form = true;
  int ambiguity_samples = 32;
};

// Residual of the circular-orbit condition xi r / n^2 = U'(r).
inline double quantization_residual(double r, double n, const PotentialModel& pot, double xi) {
  return xi * r / (n * n) - potential_derivative(pot, r);
}

inline double quantization_scale(double r, double n, const PotentialModel& pot, double xi) {
  return std::abs(xi * r / (n * n)) + std::abs(potential_derivative(pot, r));
}

// Closed-form catalog entry for a potential, if any.
inline std::optional<CatalogEntry> catalog_entry_for(const PotentialModel& pot) {
  if (auto* p = pot.get_if<potentials::Coulomb>(); p && p->alpha > 0.0)
    return CatalogEntry::coulomb(p->alpha);
  if (auto* p = pot.get_if<potentials::Linear>(); p && p->alpha > 0.0)
    return CatalogEntry::linear(p->alpha);
  if (auto* p = pot.get_if<potentials::Logarithmic>(); p && p->alpha > 0.0)
    return CatalogEntry::logarithmic(p->alpha);
  if (auto* p = pot.get_if<potentials::Polynomial>())
    return CatalogEntry::polynomial(p->alpha, p->sigma);
  return std::nullopt;
}

// Smallest integer n with a real circular orbit. Only the reconstructed
// hydrogen potential has a lower cutoff: xi_p r / n^2 - U'(r) is r times an
// increasing function, so a positive root exists iff
// n > (2 gamma / e^{2 beta xi}) sqrt(xi_p / xi).
inline int first_admissible_index(const PotentialModel& pot, const DiscreteParams& params) {
  const auto* h = pot.get_if<potentials::HydrogenReconstructed>();
  if (!h) return 1;
  const double bound =
      2.0 * h->gamma * std::exp(-2.0 * h->beta * h->xi) * std::sqrt(params.xi() / h->xi);
  if (!(bound < static_cast<double>(std::numeric_limits<int>::max() - 1)))
    return std::numeric_limits<int>::max();
  return static_cast<int>(std::floor(bound)) + 1;
}

namespace detail {

// Among the floating-point neighbours of r, picks the one at which the
// stepper's own force balance p_phi^2 / (m r^3) - U'(r) is smallest, so a
// circular start keeps p_r at rounding level.
inline double polish_balance(double r, int n, const PotentialModel& pot,
                             const DiscreteParams& params, int ulps = 16) {
  auto imbalance = [&](double x) {
    return std::abs(centripetal_term(closing_angular_momentum(n, x, params), x, params.mass()) -
                    potential_derivative(pot, x));
  };
  double best = r;
  double best_val = imbalance(r);
  for (double dir : {0.0, std::numeric_limits<double>::infinity()}) {
    double x = r;
    for (int i = 0; i < ulps && best_val > 0.0; ++i) {
      x = std::nextafter(x, dir);
      if (!(x > 0.0)) break;
      double v;
      try {
        v = imbalance(x);
      } catch (const DomainError&) {
        break;
      }
      if (v < best_val) {
        best_val = v;
        best = x;
      }
    }
  }
  return best;
}

}  // namespace detail

inline double solve_orbit_radius(int n, const PotentialModel& pot, const DiscreteParams& params,
                                 const SolverOptions& opts = {}) {
  if (n < 1) throw DomainError("orbit index must be a positive integer");
  const double xi = params.xi();
  const double nd = static_cast<double>(n);
  auto g = [&](double r) { return quantization_residual(r, nd, pot, xi); };
  auto within = [&](double r) {
    return std::abs(g(r)) <= opts.tolerance * quantization_scale(r, nd, pot, xi);
  };

  if (opts.use_closed_form) {
    if (auto entry = catalog_entry_for(pot)) {
      const double r = catalog_radius(*entry, nd, xi);
      if (std::isfinite(r) && r > 0.0 && within(r)) {
        const double p = detail::polish_balance(r, n, pot, params);
        return within(p) ? p : r;
      }
    }
  }

  roots::ExpansionOptions ex;
  if (const auto* t = pot.get_if<potentials::Tabulated>()) {
    ex.lower_limit = std::max(t->curve.front(), std::numeric_limits<double>::min());
    ex.upper_limit = t->curve.back();
    ex.start = std::sqrt(ex.lower_limit * ex.upper_limit);
  }
  roots::Bracket bracket;
  try {
    bracket = roots::expand_bracket(g, ex);
  } catch (const BracketError& e) {
    throw BracketError("n = " + std::to_string(n) + ": " + e.what(), n);
  }
  const double r = roots::refine_root(g, bracket, opts.bracket_width);

  if (!bracket.exact() &&
      roots::count_sign_changes(g, bracket.lo, bracket.hi, opts.ambiguity_samples) > 1)
    throw AmbiguityError("n = " + std::to_string(n) +
                             ": several circular-orbit radii in the bracket [" +
                             std::to_string(bracket.lo) + ", " + std::to_string(bracket.hi) +
                             "]; the force is not monotone there",
                         n);
  if (!(r > 0.0)) throw BracketError("n = " + std::to_string(n) + ": no positive radius", n);
  if (!within(r))
    throw SolverError("n = " + std::to_string(n) + ": residual " + std::to_string(g(r)) +
                          " exceeds tolerance at r = " + std::to_string(r),
                      n);
  const double p = detail::polish_balance(r, n, pot, params);
  return within(p) ? p : r;
}

// Energy of the circular orbit of radius r: (1/2) r U'(r) + U(r).
inline double orbit_energy(double r_n, const PotentialModel& pot) {
  if (!(r_n > 0.0)) throw DomainError("orbit radius must be positive");
  return 0.5 * r_n * potential_derivative(pot, r_n) + evaluate_potential(pot, r_n);
}

inline OrbitSolution solve_orbit(int n, const PotentialModel& pot, const DiscreteParams& params,
                                 const SolverOptions& opts = {}) {
  const double r = solve_orbit_radius(n, pot, params, opts);
  return {n, r, orbit_energy(r, pot), closing_angular_momentum(n, r, params)};
}

struct SpectrumTable {
  DiscreteParams params;
  PotentialModel potential;
  std::vector<OrbitSolution> rows;
  // Requested indices below first_admissible_index: no real circular orbit.
  std::vector<int> no_real_orbit;
};

inline SpectrumTable compute_spectrum(const PotentialModel& pot, const DiscreteParams& params,
                                      int n_min, int n_max, const SolverOptions& opts = {}) {
  if (n_min < 1 || n_max < n_min) throw DomainError("need 1 <= n_min <= n_max");
  SpectrumTable table{params, pot, {}, {}};
  const int first = first_admissible_index(pot, params);
  table.rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (int n = n_min; n <= n_max; ++n) {
    if (n < first) {
      table.no_real_orbit.push_back(n);
      continue;
    }
    table.rows.push_back(solve_orbit(n, pot, params, opts));
  }
  return table;
}

}  // namespace dtm
