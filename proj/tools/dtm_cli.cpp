// dtm: discrete-time central-potential spectra, reconstructions and orbits.
//
// Exit codes: 0 success, 1 verification failure, 2 bad configuration,
// 3 numerical failure (solver, inversion, collapse).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtm/dtm.hpp"
#include "dtm/verify.hpp"

namespace {

using dtm::io::format_double;

constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

// Thrown for invalid combinations of otherwise well-formed flags.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Electron mass in eV s^2 / m^2 (m_e c^2 / c^2) and hydrogen ionization energy in eV.
constexpr double kElectronMassEvSec = 510998.95 / (299792458.0 * 299792458.0);
constexpr double kHydrogenGammaEv = 13.6;

struct IndexRange {
  int lo = 1;
  int hi = 10;
};

IndexRange parse_range(const std::string& text) {
  IndexRange r;
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      r.lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(text);
      r.hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("--n expects 'a..b' or a single index, got '" + text + "'");
  }
  if (r.lo < 1 || r.hi < r.lo) throw ConfigError("--n range must satisfy 1 <= a <= b");
  return r;
}

// Shared flags. Optional values stay empty when not given so presets and
// subcommand defaults can fill them.
struct RunConfig {
  double tau = 1.0;
  std::optional<double> mass;
  std::string units = "none";
  std::string potential = "coulomb";
  std::optional<double> alpha, gamma, sigma, beta, epsilon;
  std::string potential_csv;
  std::string extrapolation = "error";
  std::string n_range = "1..10";
  std::string out = "-";
  std::string format = "csv";
  std::optional<double> tol;
  bool generic = false;

  // reconstruct
  std::string law = "hydrogen";
  std::optional<double> coefficient, exponent;
  std::string spectrum_csv;
  std::size_t points = 512;
  std::string sidecar;

  // simulate
  int revolutions = 1;
  std::optional<double> r0, pr0, phi0, pphi0;
  std::size_t steps = 0;

  // verify
  std::vector<std::string> suites;
  int n_max = 50;

  std::string config;

  dtm::DiscreteParams params() const {
    double m = mass.value_or(units == "ev-sec" ? kElectronMassEvSec : 1.0);
    return dtm::DiscreteParams(tau, m);
  }
  double gamma_or_default() const {
    return gamma.value_or(units == "ev-sec" ? kHydrogenGammaEv : 1.0);
  }
  double alpha_or_default() const { return alpha.value_or(1.0); }
};

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tau", c.tau, "discreteness quantum tau")->capture_default_str();
  sub->add_option("--mass", c.mass, "particle mass (default 1, or m_e under --units ev-sec)");
  sub->add_option("--units", c.units, "unit preset")
      ->check(CLI::IsMember({"none", "ev-sec"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "output path, '-' for stdout")->capture_default_str();
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--tol", c.tol, "tolerance override");
  sub->add_option("--config", c.config, "JSON file mirroring the flags (flags win)");
}

void add_potential(CLI::App* sub, RunConfig& c) {
  sub->add_option("--potential", c.potential, "potential family")
      ->check(CLI::IsMember({"coulomb", "linear", "logarithmic", "polynomial",
                             "hydrogen-reconstructed", "oscillator-reconstructed", "tabulated"}))
      ->capture_default_str();
  sub->add_option("--alpha", c.alpha, "strength alpha");
  sub->add_option("--gamma", c.gamma, "ionization energy gamma (hydrogen family)");
  sub->add_option("--sigma", c.sigma, "polynomial exponent sigma");
  sub->add_option("--beta", c.beta, "integration constant beta (reconstructed families)");
  sub->add_option("--epsilon", c.epsilon, "integration constant epsilon = xi r_1^2");
  sub->add_option("--potential-csv", c.potential_csv, "tabulated potential (r,U)");
  sub->add_option("--extrapolation", c.extrapolation, "tabulated extrapolation rule")
      ->check(CLI::IsMember({"error", "clamp-slope"}))
      ->capture_default_str();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

dtm::PotentialModel build_potential(const RunConfig& c, const dtm::DiscreteParams& params) {
  const double xi = params.xi();
  if (c.potential == "coulomb") return dtm::PotentialModel::coulomb(c.alpha_or_default());
  if (c.potential == "linear") return dtm::PotentialModel::linear(c.alpha_or_default());
  if (c.potential == "logarithmic") return dtm::PotentialModel::logarithmic(c.alpha_or_default());
  if (c.potential == "polynomial") {
    if (!c.sigma) throw ConfigError("--potential polynomial needs --sigma");
    return dtm::PotentialModel::polynomial(c.alpha_or_default(), *c.sigma);
  }
  if (c.potential == "hydrogen-reconstructed") {
    const double gamma = c.gamma_or_default();
    if (c.beta && c.epsilon) throw ConfigError("give --beta or --epsilon, not both");
    double beta;
    if (c.beta) {
      beta = *c.beta;
    } else {
      // Default innermost radius 1: epsilon = xi.
      const double eps = c.epsilon.value_or(xi);
      const auto conv = dtm::beta_from_epsilon(dtm::BetaKind::Hydrogen, eps, gamma, xi);
      if (!conv.derived) throw dtm::DomainError("epsilon + 2 gamma must be positive");
      beta = *conv.derived;
    }
    return dtm::hydrogen_potential(gamma, beta, xi);
  }
  if (c.potential == "oscillator-reconstructed") {
    if (c.beta && c.epsilon) throw ConfigError("give --beta or --epsilon, not both");
    const double alpha = c.alpha_or_default();
    const double beta =
        c.epsilon ? dtm::beta_from_epsilon(dtm::BetaKind::Oscillator, *c.epsilon, alpha, xi).printed
                  : c.beta.value_or(0.0);
    return dtm::oscillator_potential(alpha, beta, xi);
  }
  if (c.potential_csv.empty()) throw ConfigError("--potential tabulated needs --potential-csv");
  auto in = open_input(c.potential_csv);
  return dtm::io::read_potential_csv(
      in, c.extrapolation == "error" ? dtm::Extrapolation::Error : dtm::Extrapolation::ClampSlope);
}

// Writes to --out or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

dtm::SolverOptions solver_options(const RunConfig& c) {
  dtm::SolverOptions opts;
  if (c.tol) opts.tolerance = *c.tol;
  opts.use_closed_form = !c.generic;
  return opts;
}

int cmd_spectrum(const RunConfig& c) {
  const auto params = c.params();
  const auto pot = build_potential(c, params);
  const auto range = parse_range(c.n_range);
  Output out(c.out);
  const auto table = dtm::compute_spectrum(pot, params, range.lo, range.hi, solver_options(c));
  if (!table.no_real_orbit.empty())
    std::cerr << "no real circular orbit for n < " << table.no_real_orbit.back() + 1 << '\n';
  if (c.format == "json")
    out.stream() << dtm::io::spectrum_json(table).dump(2) << '\n';
  else
    dtm::io::write_spectrum_csv(out.stream(), table);
  return 0;
}

int cmd_catalog(const RunConfig& c) {
  const auto params = c.params();
  const double alpha = c.alpha_or_default();
  std::optional<dtm::CatalogEntry> entry;
  if (c.potential == "coulomb") entry = dtm::CatalogEntry::coulomb(alpha);
  else if (c.potential == "linear") entry = dtm::CatalogEntry::linear(alpha);
  else if (c.potential == "logarithmic") entry = dtm::CatalogEntry::logarithmic(alpha);
  else if (c.potential == "polynomial") {
    if (!c.sigma) throw ConfigError("--potential polynomial needs --sigma");
    entry = dtm::CatalogEntry::polynomial(alpha, *c.sigma);
  } else {
    throw ConfigError("catalog covers coulomb, linear, logarithmic and polynomial only");
  }
  const auto range = parse_range(c.n_range);
  dtm::SpectrumTable table{params, entry->potential(), {}, {}};
  for (int n = range.lo; n <= range.hi; ++n) {
    const double r = dtm::catalog_radius(*entry, n, params.xi());
    table.rows.push_back({n, r, dtm::catalog_energy(*entry, n, params.xi()),
                          dtm::closing_angular_momentum(n, r, params)});
  }
  Output out(c.out);
  if (c.format == "json")
    out.stream() << dtm::io::spectrum_json(table).dump(2) << '\n';
  else
    dtm::io::write_spectrum_csv(out.stream(), table);
  return 0;
}

dtm::SpectrumSpec build_law(const RunConfig& c, const dtm::DiscreteParams& params) {
  if (!c.spectrum_csv.empty()) {
    auto in = open_input(c.spectrum_csv);
    return dtm::io::read_spectrum_csv(in);
  }
  if (c.law == "hydrogen") return dtm::SpectrumSpec::hydrogen(c.gamma_or_default());
  if (c.law == "linear") return dtm::SpectrumSpec::linear(c.alpha_or_default());
  if (c.law == "coulomb") return dtm::SpectrumSpec::coulomb(c.alpha_or_default(), params.xi());
  if (c.law == "power") {
    if (!c.coefficient || !c.exponent) throw ConfigError("--law power needs --coefficient and --exponent");
    return dtm::SpectrumSpec::power(*c.coefficient, *c.exponent);
  }
  throw ConfigError("--law tabulated needs --spectrum-csv");
}

int cmd_reconstruct(const RunConfig& c) {
  const auto params = c.params();
  const double xi = params.xi();
  const auto spec = build_law(c, params);
  const auto range = parse_range(c.n_range);
  if (c.beta && c.epsilon) throw ConfigError("give --beta or --epsilon, not both");

  double eps;
  if (c.epsilon) {
    eps = *c.epsilon;
  } else if (c.beta) {
    if (auto* h = spec.get_if<dtm::laws::Hydrogen>())
      eps = dtm::epsilon_from_beta(dtm::BetaKind::Hydrogen, *c.beta, h->gamma, xi);
    else if (auto* l = spec.get_if<dtm::laws::Linear>())
      eps = dtm::epsilon_from_beta(dtm::BetaKind::Oscillator, *c.beta, l->alpha, xi);
    else
      throw ConfigError("--beta applies to the hydrogen and linear laws only; use --epsilon");
  } else if (auto* l = spec.get_if<dtm::laws::Linear>()) {
    eps = 0.5 * l->alpha;
  } else if (auto* p = spec.get_if<dtm::laws::Power>(); p && c.law == "coulomb") {
    eps = -2.0 * p->coefficient;
  } else {
    eps = xi;
  }
  if (!(eps > 0.0)) throw ConfigError("epsilon must be positive, got " + format_double(eps));

  const dtm::RadiusProfile profile(spec, params, eps);
  const auto grid = dtm::profile_radius_grid(profile, range.lo, range.hi, c.points);
  dtm::ReconstructOptions ropts;
  ropts.extrapolation =
      c.extrapolation == "error" ? dtm::Extrapolation::Error : dtm::Extrapolation::ClampSlope;
  if (c.tol) ropts.self_check_tolerance = *c.tol;
  const auto rec = dtm::reconstruct_potential(spec, params, eps, grid, ropts);

  nlohmann::ordered_json side;
  side["spectrum"] = dtm::io::spectrum_spec_json(spec);
  side["epsilon"] = eps;
  side["tau"] = params.tau();
  side["mass"] = params.mass();
  side["xi"] = xi;
  side["beta"] = nullptr;
  std::optional<dtm::PotentialModel> closed;
  if (auto* h = spec.get_if<dtm::laws::Hydrogen>()) {
    const auto b = dtm::beta_from_epsilon(dtm::BetaKind::Hydrogen, eps, h->gamma, xi);
    side["beta"] = {{"printed", b.printed}, {"derived", *b.derived}, {"verified", "derived"}};
    closed = dtm::hydrogen_potential(h->gamma, b.value(), xi);
  } else if (auto* l = spec.get_if<dtm::laws::Linear>()) {
    const auto b = dtm::beta_from_epsilon(dtm::BetaKind::Oscillator, eps, l->alpha, xi);
    side["beta"] = {{"printed", b.printed}, {"derived", *b.derived}, {"verified", "printed"}};
    if (b.printed >= 0.0) closed = dtm::oscillator_potential(l->alpha, b.printed, xi);
  } else if (auto* p = spec.get_if<dtm::laws::Power>(); p && c.law == "coulomb") {
    if (std::abs(eps + 2.0 * p->coefficient) <= 1e-12 * std::abs(eps))
      closed = dtm::PotentialModel::coulomb(c.alpha_or_default());
  }
  side["grid"] = {{"points", grid.size()}, {"r_min", grid.front()}, {"r_max", grid.back()},
                  {"n_min", range.lo}, {"n_max", range.hi}};
  side["force_identity_residual"] = rec.force_identity_residual;
  if (closed) {
    const double dev = dtm::verify::knot_deviation(rec, *closed);
    side["overlay"] = {{"closed_form", dtm::io::potential_json(*closed)}, {"max_rel_deviation", dev}};
    std::cerr << "closed-form overlay (" << closed->kind() << "): max relative deviation "
              << format_double(dev) << '\n';
  } else {
    side["overlay"] = nullptr;
  }

  Output out(c.out);
  dtm::io::write_potential_csv(out.stream(), rec.potential);
  std::string sidecar = c.sidecar;
  if (sidecar.empty() && c.out != "-") sidecar = c.out + ".json";
  if (!sidecar.empty()) {
    std::ofstream js(sidecar);
    if (!js) throw ConfigError("cannot write '" + sidecar + "'");
    js << side.dump(2) << '\n';
  } else {
    std::cerr << side.dump(2) << '\n';
  }
  return 0;
}

std::string path_for_index(const std::string& out, int n, bool many) {
  if (!many || out == "-") return out;
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of('/');
  const std::string tag = "_n" + std::to_string(n);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + tag;
  return out.substr(0, dot) + tag + out.substr(dot);
}

void write_trajectory(std::ostream& os, const dtm::Trajectory& traj, const std::string& format,
                      const std::optional<dtm::ClosureReport>& closure, int n) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["params"] = dtm::io::params_json(traj.params);
    j["potential"] = dtm::io::potential_json(traj.potential);
    if (closure)
      j["closure"] = {{"n", n},
                      {"passed", closure->passed()},
                      {"phi_residual", closure->phi_residual},
                      {"r_residual", closure->r_residual},
                      {"p_r_residual", closure->p_r_residual}};
    auto states = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const auto& s = traj.states[k];
      states.push_back({{"k", k}, {"t", static_cast<double>(k) * traj.params.tau()}, {"r", s.r},
                        {"p_r", s.p_r}, {"phi", s.phi}, {"p_phi", s.p_phi},
                        {"x", s.r * std::cos(s.phi)}, {"y", s.r * std::sin(s.phi)}});
    }
    j["states"] = std::move(states);
    os << j.dump(2) << '\n';
    return;
  }
  if (closure) {
    os << "# closure n=" << n << " passed=" << (closure->passed() ? "true" : "false")
       << " phi_residual=" << format_double(closure->phi_residual)
       << " r_residual=" << format_double(closure->r_residual)
       << " p_r_residual=" << format_double(closure->p_r_residual) << '\n';
  }
  dtm::io::write_trajectory_csv(os, traj);
}

int cmd_simulate(const RunConfig& c) {
  const auto params = c.params();
  const auto pot = build_potential(c, params);
  const bool explicit_state = c.r0 || c.pr0 || c.phi0 || c.pphi0;

  if (explicit_state) {
    if (!c.r0) throw ConfigError("explicit initial state needs --r0");
    if (c.steps == 0) throw ConfigError("explicit initial state needs --steps");
    const dtm::PhaseState s0{*c.r0, c.pr0.value_or(0.0), c.phi0.value_or(0.0), c.pphi0.value_or(0.0)};
    const auto traj = dtm::simulate(s0, pot, params, c.steps);
    Output out(c.out);
    write_trajectory(out.stream(), traj, c.format, std::nullopt, 0);
    return 0;
  }

  const auto range = parse_range(c.n_range);
  if (c.revolutions < 1) throw ConfigError("--revolutions must be >= 1");
  const bool many = range.hi > range.lo;
  const double tol = c.tol.value_or(1e-12);
  bool all_closed = true;
  for (int n = range.lo; n <= range.hi; ++n) {
    if (n < dtm::first_admissible_index(pot, params)) {
      std::cerr << "n=" << n << ": no real circular orbit\n";
      continue;
    }
    const auto orbit = dtm::solve_orbit(n, pot, params, solver_options(c));
    const auto traj = dtm::simulate(dtm::circular_orbit_state(orbit, params), pot, params,
                                    static_cast<std::size_t>(n) * c.revolutions);
    const auto rep = dtm::check_closure(
        traj, n, dtm::ClosureTolerances{tol * n, tol * orbit.r_n, tol * orbit.r_n});
    all_closed = all_closed && rep.passed();
    std::cerr << "n=" << n << " r_n=" << format_double(orbit.r_n)
              << " E_n=" << format_double(orbit.e_n) << " closure "
              << (rep.passed() ? "pass" : "FAIL") << '\n';
    Output out(path_for_index(c.out, n, many));
    write_trajectory(out.stream(), traj, c.format, rep, n);
  }
  return 0;
}

int cmd_verify(const RunConfig& c) {
  dtm::verify::Options opts;
  opts.closure_n_max = c.n_max;
  const auto names = c.suites.empty() ? dtm::verify::suite_names() : c.suites;
  bool all = true;
  for (const auto& name : names) {
    const auto res = dtm::verify::run_suite(name, opts);
    all = all && res.passed;
    std::cout << (res.passed ? "PASS  " : "FAIL  ") << res.name << "  ("
              << format_double(std::round(res.seconds * 1e4) / 1e4) << " s)\n";
    for (const auto& line : res.lines) std::cout << "      " << line << '\n';
  }
  std::cout << (all ? "all suites passed" : "verification FAILED") << '\n';
  return all ? 0 : kExitVerify;
}

// Splices values from a flat JSON object into argv as `--key value` pairs for
// keys not already present on the command line.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") path = args[i + 1];
  for (const auto& a : args)
    if (a.rfind("--config=", 0) == 0) path = a.substr(9);
  if (path.empty()) return args;

  auto in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config '" + path + "' must be a JSON object");

  auto given = [&](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back(flag);
        args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back(flag);
      args.push_back(value.is_number_float() ? format_double(value.get<double>()) : value.dump());
    } else {
      throw ConfigError("config key '" + key + "' has an unsupported value");
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Discrete-time mechanics in central potentials", "dtm"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "circular-orbit radii and energies for a potential");
  add_common(spectrum, cfg);
  add_potential(spectrum, cfg);
  spectrum->add_option("--n", cfg.n_range, "orbit index range a..b")->capture_default_str();
  spectrum->add_flag("--generic", cfg.generic, "always use the bracketing solver");

  auto* reconstruct = app.add_subcommand("reconstruct", "tabulated potential for a prescribed spectrum");
  add_common(reconstruct, cfg);
  reconstruct->add_option("--law", cfg.law, "energy law")
      ->check(CLI::IsMember({"hydrogen", "linear", "coulomb", "power", "tabulated"}))
      ->capture_default_str();
  reconstruct->add_option("--alpha", cfg.alpha, "linear / coulomb law strength");
  reconstruct->add_option("--gamma", cfg.gamma, "hydrogen law gamma");
  reconstruct->add_option("--coefficient", cfg.coefficient, "power law coefficient");
  reconstruct->add_option("--exponent", cfg.exponent, "power law exponent");
  reconstruct->add_option("--spectrum-csv", cfg.spectrum_csv, "tabulated law (n,E)");
  reconstruct->add_option("--epsilon", cfg.epsilon, "integration constant epsilon = xi r_1^2");
  reconstruct->add_option("--beta", cfg.beta, "closed-form constant beta (converted to epsilon)");
  reconstruct->add_option("--n", cfg.n_range, "orbit indices spanned by the grid")->default_str("1..20");
  reconstruct->add_option("--points", cfg.points, "grid points")->capture_default_str();
  reconstruct->add_option("--sidecar", cfg.sidecar, "JSON sidecar path (default <out>.json)");
  reconstruct->add_option("--extrapolation", cfg.extrapolation, "extrapolation rule")
      ->check(CLI::IsMember({"error", "clamp-slope"}))
      ->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "discrete-time trajectories");
  add_common(simulate, cfg);
  add_potential(simulate, cfg);
  simulate->add_option("--n", cfg.n_range, "circular orbits to simulate a..b")->default_str("1..3");
  simulate->add_option("--revolutions", cfg.revolutions, "revolutions per orbit")->capture_default_str();
  simulate->add_option("--r0", cfg.r0, "explicit initial r");
  simulate->add_option("--pr0", cfg.pr0, "explicit initial p_r");
  simulate->add_option("--phi0", cfg.phi0, "explicit initial phi");
  simulate->add_option("--pphi0", cfg.pphi0, "explicit initial p_phi");
  simulate->add_option("--steps", cfg.steps, "steps for an explicit initial state");

  auto* verify = app.add_subcommand("verify", "run the self-verification suites");
  verify->add_option("--suite", cfg.suites, "suite name (repeatable)")
      ->check(CLI::IsMember(dtm::verify::suite_names()));
  verify->add_option("--n-max", cfg.n_max, "largest orbit index in the closure suite")
      ->capture_default_str();
  verify->add_option("--config", cfg.config, "JSON file mirroring the flags (flags win)");

  auto* catalog = app.add_subcommand("catalog", "closed-form radii and energies of the power-law family");
  add_common(catalog, cfg);
  catalog->add_option("--potential", cfg.potential, "catalog family")
      ->check(CLI::IsMember({"coulomb", "linear", "logarithmic", "polynomial"}))
      ->capture_default_str();
  catalog->add_option("--alpha", cfg.alpha, "strength alpha");
  catalog->add_option("--sigma", cfg.sigma, "polynomial exponent sigma");
  catalog->add_option("--n", cfg.n_range, "orbit index range a..b")->capture_default_str();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (reconstruct->parsed() && reconstruct->get_option("--n")->count() == 0) cfg.n_range = "1..20";
  if (simulate->parsed() && simulate->get_option("--n")->count() == 0) cfg.n_range = "1..3";

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (catalog->parsed()) return cmd_catalog(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dtm::DomainError& e) {
    // Parameter-domain violations are configuration errors; numeric domain
    // failures during a run surface as the more specific types below.
    if (dynamic_cast<const dtm::TrajectoryDomainError*>(&e) ||
        dynamic_cast<const dtm::NegativeRadicandError*>(&e) ||
        dynamic_cast<const dtm::RangeError*>(&e) ||
        dynamic_cast<const dtm::MonotonicityError*>(&e)) {
      std::cerr << "numerical error: " << e.what() << '\n';
      return kExitNumeric;
    }
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dtm::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const dtm::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
