#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "dtm/catalog.hpp"
#include "dtm/dynamics.hpp"
#include "dtm/inverse.hpp"
#include "dtm/io.hpp"
#include "dtm/spectrum.hpp"

// Self-verification suites run by `dtm verify`.
namespace dtm::verify {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;
  double seconds = 0.0;
};

struct Options {
  // Upper orbit index for the closure suite.
  int closure_n_max = 50;
};

namespace detail {

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

template <class F>
SuiteResult timed(std::string name, F&& body) {
  SuiteResult res;
  res.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(res);
  } catch (const std::exception& e) {
    res.passed = false;
    res.lines.push_back(std::string("error: ") + e.what());
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline const std::vector<double>& alpha_xi_grid() {
  static const std::vector<double> g{0.5, 1.0, 7.3};
  return g;
}

}  // namespace detail

// Reference hydrogen setup: gamma = 13.6, tau = m = 1, innermost radius 1.
struct HydrogenSetup {
  double gamma = 13.6;
  DiscreteParams params{1.0, 1.0};
  double epsilon() const { return params.xi(); }
  double beta() const {
    return beta_from_epsilon(BetaKind::Hydrogen, epsilon(), gamma, params.xi()).value();
  }
  PotentialModel potential() const { return hydrogen_potential(gamma, beta(), params.xi()); }
};

inline SuiteResult hydrogen_spectrum(int n_max = 50) {
  return detail::timed("hydrogen-spectrum", [&](SuiteResult& res) {
    const HydrogenSetup h;
    const auto table = compute_spectrum(h.potential(), h.params, 1, n_max);
    double worst = 0.0;
    for (const auto& row : table.rows)
      worst = std::max(worst, detail::rel(row.e_n, -h.gamma / (row.n * row.n)));
    res.passed = worst <= 1e-8 && table.rows.size() + table.no_real_orbit.size() ==
                                      static_cast<std::size_t>(n_max);
    res.lines.push_back("E_n = -13.6/n^2 over " + std::to_string(table.rows.size()) +
                        " admissible levels, max rel err " + detail::sci(worst) + " (tol 1e-8)");
  });
}

struct OscillatorFamily {
  double beta;
  double max_spacing_error;
  double offset;  // max |E_n - alpha n|
  std::vector<OrbitSolution> rows;
};

inline OscillatorFamily oscillator_family(double alpha, double beta, double xi, int n_max) {
  const auto params = DiscreteParams::with_xi(xi);
  const auto table = compute_spectrum(oscillator_potential(alpha, beta, params.xi()), params, 1, n_max);
  OscillatorFamily f{beta, 0.0, 0.0, table.rows};
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    f.offset = std::max(f.offset, std::abs(table.rows[i].e_n - alpha * table.rows[i].n));
    if (i > 0)
      f.max_spacing_error = std::max(
          f.max_spacing_error, std::abs(table.rows[i].e_n - table.rows[i - 1].e_n - alpha) / alpha);
  }
  return f;
}

inline SuiteResult oscillator_spectrum(int n_max = 50) {
  return detail::timed("oscillator-spectrum", [&](SuiteResult& res) {
    const auto base = oscillator_family(1.0, 0.0, 1.0, n_max);
    double worst = 0.0;
    for (const auto& row : base.rows) worst = std::max(worst, detail::rel(row.e_n, row.n));
    res.passed = worst <= 1e-8;
    res.lines.push_back("beta=0: E_n = n, max rel err " + detail::sci(worst) + " (tol 1e-8)");
    for (double beta : {0.5, 2.0}) {
      const auto fam = oscillator_family(1.0, beta, 1.0, n_max);
      res.passed = res.passed && fam.max_spacing_error <= 1e-8;
      res.lines.push_back("beta=" + io::format_double(beta) + ": spacing err " +
                          detail::sci(fam.max_spacing_error) + " (tol 1e-8), offset E_n - n = " +
                          detail::sci(fam.offset));
    }
  });
}

inline std::vector<CatalogEntry> catalog_entries(double alpha) {
  return {CatalogEntry::coulomb(alpha), CatalogEntry::linear(alpha),
          CatalogEntry::logarithmic(alpha), CatalogEntry::polynomial(alpha, 2.0 / 3.0),
          CatalogEntry::polynomial(alpha, 1.5), CatalogEntry::polynomial(-alpha, -0.5),
          CatalogEntry::polynomial(-alpha, -1.5)};
}

inline SuiteResult catalog_oracle() {
  return detail::timed("catalog-oracle", [&](SuiteResult& res) {
    SolverOptions generic;
    generic.use_closed_form = false;
    double worst_r = 0.0;
    double worst_e = 0.0;
    int cases = 0;
    for (double alpha : detail::alpha_xi_grid()) {
      for (double xi_target : detail::alpha_xi_grid()) {
        const auto params = DiscreteParams::with_xi(xi_target);
        const double xi = params.xi();
        for (const auto& entry : catalog_entries(alpha)) {
          const auto pot = entry.potential();
          const auto table = compute_spectrum(pot, params, 1, 20, generic);
          for (const auto& row : table.rows) {
            const double r_cf = catalog_radius(entry, row.n, xi);
            const double e_cf = catalog_energy(entry, row.n, xi);
            const double scale = std::abs(e_cf) + std::abs(evaluate_potential(pot, r_cf)) + 1.0;
            worst_r = std::max(worst_r, detail::rel(row.r_n, r_cf));
            worst_e = std::max(worst_e, std::abs(row.e_n - e_cf) / scale);
            ++cases;
          }
        }
      }
    }
    res.passed = worst_r <= 1e-10 && worst_e <= 1e-10;
    res.lines.push_back(std::to_string(cases) + " (family, alpha, xi, n) cases: max rel r err " +
                        detail::sci(worst_r) + ", max scaled E err " + detail::sci(worst_e) +
                        " (tol 1e-10)");
  });
}

// Least-squares slope of ln|E_n| against ln n.
inline double log_log_slope(const std::vector<OrbitSolution>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    const double x = std::log(static_cast<double>(row.n));
    const double y = std::log(std::abs(row.e_n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

inline SuiteResult coulomb_slope() {
  return detail::timed("coulomb-slope", [&](SuiteResult& res) {
    SolverOptions generic;
    generic.use_closed_form = false;
    const DiscreteParams params(1.0, 1.0);
    const auto table = compute_spectrum(PotentialModel::coulomb(1.0), params, 1, 64, generic);
    const double slope = log_log_slope(table.rows);
    res.passed = std::abs(slope + 2.0 / 3.0) <= 1e-6;
    res.lines.push_back("log-log slope " + io::format_double(slope) + ", |slope + 2/3| = " +
                        detail::sci(std::abs(slope + 2.0 / 3.0)) + " (tol 1e-6; -2 would be " +
                        "the -gamma/n^2 law)");
  });
}

inline SuiteResult sigma_two_thirds() {
  return detail::timed("sigma-two-thirds", [&](SuiteResult& res) {
    SolverOptions generic;
    generic.use_closed_form = false;
    const auto params = DiscreteParams::with_xi(1.0);
    const auto table =
        compute_spectrum(PotentialModel::polynomial(1.0, 2.0 / 3.0), params, 1, 50, generic);
    const double ratio1 = table.rows.front().e_n;
    double worst = 0.0;
    for (const auto& row : table.rows) worst = std::max(worst, detail::rel(row.e_n / row.n, ratio1));
    res.passed = worst <= 1e-10;
    res.lines.push_back("E_n/n = " + io::format_double(ratio1) + " constant to " +
                        detail::sci(worst) + " over n = 1..50 (tol 1e-10)");
  });
}

struct RoundTripCase {
  std::string label;
  SpectrumSpec spec;
  double epsilon;
};

inline std::vector<RoundTripCase> round_trip_cases(const DiscreteParams& params) {
  const auto coulomb = SpectrumSpec::coulomb(1.0, params.xi());
  return {{"hydrogen gamma=13.6", SpectrumSpec::hydrogen(13.6), params.xi()},
          {"linear alpha=1", SpectrumSpec::linear(1.0), 0.5},
          {"coulomb n^(-2/3)", coulomb, -2.0 * coulomb.energy(1.0)}};
}

// Cubic Hermite derivatives converge as h^3; 512 knots leave the hydrogen
// case near 1e-6 at n = 20, 2048 knots bring it to ~1e-8.
inline constexpr std::size_t round_trip_points = 2048;

inline SuiteResult inverse_round_trip() {
  return detail::timed("inverse-round-trip", [&](SuiteResult& res) {
    const DiscreteParams params(1.0, 1.0);
    res.passed = true;
    for (const auto& c : round_trip_cases(params)) {
      const RadiusProfile profile(c.spec, params, c.epsilon);
      const auto grid = profile_radius_grid(profile, 1.0, 21.0, round_trip_points);
      const auto rec = reconstruct_potential(c.spec, params, c.epsilon, grid);
      const auto table = compute_spectrum(rec.potential, params, 2, 20);
      double worst = 0.0;
      for (const auto& row : table.rows) worst = std::max(worst, detail::rel(row.e_n, c.spec.energy(row.n)));
      res.passed = res.passed && worst <= 1e-6;
      res.lines.push_back(c.label + ": max rel E err " + detail::sci(worst) +
                          " over n = 2..20 (tol 1e-6)");
    }
  });
}

struct ConventionOutcome {
  double printed_deviation;
  double derived_deviation;
  int passing = 0;
  BetaConvention verified = BetaConvention::Derived;
};

// Max relative deviation of the tabulated reconstruction from a closed form
// at the knots.
inline double knot_deviation(const Reconstruction& rec, const PotentialModel& closed) {
  const auto& curve = rec.potential.get_if<potentials::Tabulated>()->curve;
  double worst = 0.0;
  for (std::size_t i = 0; i < curve.x().size(); ++i)
    worst = std::max(worst, detail::rel(curve.y()[i], evaluate_potential(closed, curve.x()[i])));
  return worst;
}

// Reconstructs the hydrogen law numerically and compares with the closed
// form under both epsilon -> beta relations.
inline ConventionOutcome hydrogen_beta_convention(double gamma, const DiscreteParams& params,
                                                  double epsilon, std::size_t points = 512) {
  const auto spec = SpectrumSpec::hydrogen(gamma);
  const RadiusProfile profile(spec, params, epsilon);
  const auto grid = profile_radius_grid(profile, 1.0, 24.0, points);
  const auto rec = reconstruct_potential(spec, params, epsilon, grid);
  const auto beta = beta_from_epsilon(BetaKind::Hydrogen, epsilon, gamma, params.xi());
  ConventionOutcome out{};
  out.printed_deviation = knot_deviation(rec, hydrogen_potential(gamma, beta.printed, params.xi()));
  out.derived_deviation =
      beta.derived ? knot_deviation(rec, hydrogen_potential(gamma, *beta.derived, params.xi()))
                   : std::numeric_limits<double>::infinity();
  const bool printed_ok = out.printed_deviation <= 1e-8;
  const bool derived_ok = out.derived_deviation <= 1e-8;
  out.passing = int(printed_ok) + int(derived_ok);
  out.verified = printed_ok ? BetaConvention::Printed : BetaConvention::Derived;
  return out;
}

inline SuiteResult beta_convention() {
  return detail::timed("beta-convention", [&](SuiteResult& res) {
    res.passed = true;
    for (double gamma : {1.0, 13.6}) {
      for (double eps : {0.5, 1.0, 4.0}) {
        const auto params = DiscreteParams::with_xi(1.0);
        const auto out = hydrogen_beta_convention(gamma, params, eps);
        const bool ok = out.passing == 1 && out.verified == BetaConvention::Derived;
        res.passed = res.passed && ok;
        res.lines.push_back("gamma=" + io::format_double(gamma) + " eps=" + io::format_double(eps) +
                            ": printed ln(eps+gamma)/(2xi) dev " + detail::sci(out.printed_deviation) +
                            ", derived ln(eps+2gamma)/(2xi) dev " +
                            detail::sci(out.derived_deviation) + " -> " +
                            (out.passing == 1 ? to_string(out.verified) : "ambiguous"));
      }
    }
    res.lines.push_back("verified hydrogen convention: beta = ln(eps + 2 gamma) / (2 xi)");
  });
}

inline SuiteResult closed_form_reconstruction() {
  return detail::timed("closed-form-reconstruction", [&](SuiteResult& res) {
    const auto params = DiscreteParams::with_xi(1.0);
    const double xi = params.xi();
    res.passed = true;
    {
      const double gamma = 13.6, eps = 1.0;
      const auto conv = hydrogen_beta_convention(gamma, params, eps);
      const auto beta = beta_from_epsilon(BetaKind::Hydrogen, eps, gamma, xi);
      const double b = conv.verified == BetaConvention::Derived ? *beta.derived : beta.printed;
      const auto spec = SpectrumSpec::hydrogen(gamma);
      const auto grid = profile_radius_grid(RadiusProfile(spec, params, eps), 1.0, 24.0, 512);
      const auto rec = reconstruct_potential(spec, params, eps, grid);
      const double dev = knot_deviation(rec, hydrogen_potential(gamma, b, xi));
      res.passed = res.passed && dev <= 1e-8;
      res.lines.push_back("hydrogen (" + to_string(conv.verified) + " beta): max rel dev " +
                          detail::sci(dev) + " on 512 knots (tol 1e-8)");
    }
    for (double beta : {0.0, 0.5}) {
      const double alpha = 1.0;
      const double eps = epsilon_from_beta(BetaKind::Oscillator, beta, alpha, xi);
      const auto spec = SpectrumSpec::linear(alpha);
      const auto grid = profile_radius_grid(RadiusProfile(spec, params, eps), 1.0, 24.0, 512);
      const auto rec = reconstruct_potential(spec, params, eps, grid);
      const double dev = knot_deviation(rec, oscillator_potential(alpha, beta, xi));
      res.passed = res.passed && dev <= 1e-8;
      res.lines.push_back("oscillator beta=" + io::format_double(beta) + ": max rel dev " +
                          detail::sci(dev) + " on 512 knots (tol 1e-8)");
    }
  });
}

// Real root of alpha n^3 / (2 xi) + beta n = r^2 by bracketed search,
// independent of the resolvent formula.
inline double cubic_orbit_index(double r, double alpha, double beta, double xi) {
  auto f = [&](double n) { return alpha * n * n * n / (2.0 * xi) + beta * n - r * r; };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-16 * std::max(a, b); };
  std::uintmax_t iters = 400;
  auto [a, b] = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi), tol, iters);
  return 0.5 * (a + b);
}

inline SuiteResult oscillator_cubic() {
  return detail::timed("oscillator-cubic", [&](SuiteResult& res) {
    const double alpha = 1.0, xi = 1.0;
    double worst = 0.0;
    for (double beta : {0.5, 2.0}) {
      const auto pot = oscillator_potential(alpha, beta, xi);
      const auto radii = log_grid(oscillator_orbit_radius(1.0, alpha, beta, xi),
                                  oscillator_orbit_radius(50.0, alpha, beta, xi), 256);
      for (double r : radii) {
        const double n = cubic_orbit_index(r, alpha, beta, xi);
        const double kinetic = xi * r * r / (2.0 * n * n);
        const double expected = alpha * n - kinetic;
        const double scale = alpha * n + kinetic;
        worst = std::max(worst, std::abs(evaluate_potential(pot, r) - expected) / scale);
      }
    }
    res.passed = worst <= 1e-10;
    res.lines.push_back("printed U(r) vs alpha n(r) - xi r^2/(2 n^2) at 2 x 256 radii: max err " +
                        detail::sci(worst) + " (tol 1e-10)");
  });
}

inline SuiteResult closure(int n_max = 50) {
  return detail::timed("closure", [&](SuiteResult& res) {
    struct Case {
      std::string label;
      PotentialModel pot;
      DiscreteParams params;
      std::vector<OrbitSolution> rows;
    };
    std::vector<Case> cases;
    const HydrogenSetup h;
    cases.push_back({"hydrogen", h.potential(), h.params,
                     compute_spectrum(h.potential(), h.params, 1, n_max).rows});
    for (double beta : {0.0, 0.5, 2.0}) {
      const auto params = DiscreteParams::with_xi(1.0);
      const auto pot = oscillator_potential(1.0, beta, params.xi());
      cases.push_back({"oscillator beta=" + io::format_double(beta), pot, params,
                       compute_spectrum(pot, params, 1, n_max).rows});
    }
    for (double alpha : detail::alpha_xi_grid())
      for (double xi : detail::alpha_xi_grid())
        for (const auto& entry : catalog_entries(alpha)) {
          const auto params = DiscreteParams::with_xi(xi);
          const auto pot = entry.potential();
          cases.push_back({to_string(entry.kind()), pot, params,
                           compute_spectrum(pot, params, 1, std::min(20, n_max)).rows});
        }
    {
      const DiscreteParams params(1.0, 1.0);
      const auto pot = PotentialModel::coulomb(1.0);
      cases.push_back({"coulomb slope set", pot, params,
                       compute_spectrum(pot, params, 1, std::max(64, n_max)).rows});
    }
    double worst_phi = 0.0, worst_r = 0.0, worst_pr = 0.0;
    std::size_t orbits = 0;
    res.passed = true;
    for (const auto& c : cases) {
      for (const auto& row : c.rows) {
        const auto traj = simulate(circular_orbit_state(row, c.params), c.pot, c.params,
                                   static_cast<std::size_t>(row.n));
        const auto rep = check_closure(
            traj, row.n, ClosureTolerances{1e-12 * row.n, 1e-12 * row.r_n, 1e-12 * row.r_n});
        worst_phi = std::max(worst_phi, rep.phi_residual / row.n);
        worst_r = std::max(worst_r, rep.r_residual / row.r_n);
        worst_pr = std::max(worst_pr, rep.p_r_residual / row.r_n);
        ++orbits;
        if (!rep.passed()) {
          res.passed = false;
          res.lines.push_back("FAIL " + c.label + " n=" + std::to_string(row.n));
        }
      }
    }
    res.lines.push_back(std::to_string(orbits) + " orbits: max phi residual/n " + detail::sci(worst_phi) +
                        ", max r drift/r_n " + detail::sci(worst_r) + ", max |p_r|/r_n " +
                        detail::sci(worst_pr) + " (tol 1e-12)");
  });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "hydrogen-spectrum", "oscillator-spectrum",        "catalog-oracle", "coulomb-slope",
      "sigma-two-thirds",  "inverse-round-trip",         "closed-form-reconstruction",
      "closure",           "beta-convention",            "oscillator-cubic"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, const Options& opts = {}) {
  if (name == "hydrogen-spectrum") return hydrogen_spectrum();
  if (name == "oscillator-spectrum") return oscillator_spectrum();
  if (name == "catalog-oracle") return catalog_oracle();
  if (name == "coulomb-slope") return coulomb_slope();
  if (name == "sigma-two-thirds") return sigma_two_thirds();
  if (name == "inverse-round-trip") return inverse_round_trip();
  if (name == "closed-form-reconstruction") return closed_form_reconstruction();
  if (name == "closure") return closure(opts.closure_n_max);
  if (name == "beta-convention") return beta_convention();
  if (name == "oscillator-cubic") return oscillator_cubic();
  throw DomainError("unknown verification suite '" + name + "'");
}

}  // namespace dtm::verify
