#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "dtm/dynamics.hpp"
#include "dtm/errors.hpp"
#include "dtm/potential.hpp"
#include "dtm/spectrum.hpp"
#include "dtm/spectrum_law.hpp"

namespace dtm::io {

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw FormatError("not a number: '" + std::string(s) + "'");
  return v;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Reads a two-column numeric CSV with the given header; '#' lines are skipped.
inline std::vector<std::pair<double, double>> read_two_columns(std::istream& in,
                                                               std::string_view header) {
  std::string line;
  bool have_header = false;
  std::vector<std::pair<double, double>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (line != header)
        throw FormatError("expected header '" + std::string(header) + "', got '" + line + "'");
      have_header = true;
      continue;
    }
    const auto cols = split(line);
    if (cols.size() != 2)
      throw FormatError("line " + std::to_string(lineno) + ": expected 2 columns");
    try {
      rows.emplace_back(parse_double(cols[0]), parse_double(cols[1]));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw FormatError("missing header '" + std::string(header) + "'");
  return rows;
}

}  // namespace detail

// ---- tabulated potential: "r,U" ----

inline void write_potential_csv(std::ostream& out, const PotentialModel& pot) {
  const auto* t = pot.get_if<potentials::Tabulated>();
  if (!t) throw DomainError("only tabulated potentials serialize to CSV");
  out << "r,U\n";
  const auto x = t->curve.x();
  const auto y = t->curve.y();
  for (std::size_t i = 0; i < x.size(); ++i)
    out << format_double(x[i]) << ',' << format_double(y[i]) << '\n';
}

inline PotentialModel read_potential_csv(std::istream& in,
                                         Extrapolation extrapolation = Extrapolation::Error) {
  const auto rows = detail::read_two_columns(in, "r,U");
  std::vector<double> r, u;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].first > rows[i - 1].first))
      throw FormatError("r column is not strictly increasing at data row " + std::to_string(i + 1));
    r.push_back(rows[i].first);
    u.push_back(rows[i].second);
  }
  if (r.size() < 4) throw FormatError("tabulated potential needs at least 4 rows");
  try {
    return PotentialModel::tabulated(std::move(r), std::move(u), extrapolation);
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

// ---- tabulated spectrum: "n,E" with n = 1, 2, ... ----

inline SpectrumSpec read_spectrum_csv(std::istream& in) {
  const auto rows = detail::read_two_columns(in, "n,E");
  std::vector<double> energies;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != static_cast<double>(i + 1))
      throw FormatError("n column must run 1, 2, 3, ... (row " + std::to_string(i + 1) + ")");
    energies.push_back(rows[i].second);
  }
  if (energies.size() < 4) throw FormatError("tabulated spectrum needs at least 4 levels");
  try {
    return SpectrumSpec::tabulated(std::move(energies));
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

inline void write_spectrum_law_csv(std::ostream& out, const SpectrumSpec& spec, int n_max) {
  out << "n,E\n";
  for (int n = 1; n <= n_max; ++n) out << n << ',' << format_double(spec.energy(n)) << '\n';
}

// ---- trajectory: "k,t,r,p_r,phi,p_phi,x,y" ----

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "k,t,r,p_r,phi,p_phi,x,y\n";
  const double tau = traj.params.tau();
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& s = traj.states[k];
    out << k << ',' << format_double(static_cast<double>(k) * tau) << ',' << format_double(s.r)
        << ',' << format_double(s.p_r) << ',' << format_double(s.phi) << ','
        << format_double(s.p_phi) << ',' << format_double(s.r * std::cos(s.phi)) << ','
        << format_double(s.r * std::sin(s.phi)) << '\n';
  }
}

// ---- descriptors and spectrum tables ----

inline nlohmann::ordered_json params_json(const DiscreteParams& p) {
  return {{"tau", p.tau()}, {"mass", p.mass()}, {"xi", p.xi()}};
}

inline nlohmann::ordered_json potential_json(const PotentialModel& pot) {
  using namespace potentials;
  nlohmann::ordered_json j;
  j["kind"] = pot.kind();
  std::visit(dtm::detail::overloaded{
                 [&](const Coulomb& p) { j["alpha"] = p.alpha; },
                 [&](const Linear& p) { j["alpha"] = p.alpha; },
                 [&](const Logarithmic& p) { j["alpha"] = p.alpha; },
                 [&](const Polynomial& p) {
                   j["alpha"] = p.alpha;
                   j["sigma"] = p.sigma;
                 },
                 [&](const HydrogenReconstructed& p) {
                   j["gamma"] = p.gamma;
                   j["beta"] = p.beta;
                   j["xi"] = p.xi;
                 },
                 [&](const OscillatorReconstructed& p) {
                   j["alpha"] = p.alpha;
                   j["beta"] = p.beta;
                   j["xi"] = p.xi;
                 },
                 [&](const Tabulated& t) {
                   j["points"] = t.curve.x().size();
                   j["r_min"] = t.curve.front();
                   j["r_max"] = t.curve.back();
                   j["extrapolation"] =
                       t.extrapolation == Extrapolation::Error ? "error" : "clamp-slope";
                 }},
             pot.variant());
  return j;
}

inline nlohmann::ordered_json spectrum_spec_json(const SpectrumSpec& spec) {
  nlohmann::ordered_json j;
  j["law"] = spec.kind();
  if (auto* l = spec.get_if<laws::Hydrogen>()) j["gamma"] = l->gamma;
  if (auto* l = spec.get_if<laws::Linear>()) j["alpha"] = l->alpha;
  if (auto* l = spec.get_if<laws::Power>()) {
    j["coefficient"] = l->coefficient;
    j["exponent"] = l->exponent;
  }
  if (auto* l = spec.get_if<laws::Tabulated>()) j["levels"] = l->curve.x().size();
  return j;
}

inline void write_spectrum_csv(std::ostream& out, const SpectrumTable& table) {
  out << "n,r_n,E_n,p_phi\n";
  for (const auto& row : table.rows)
    out << row.n << ',' << format_double(row.r_n) << ',' << format_double(row.e_n) << ','
        << format_double(row.p_phi) << '\n';
}

inline nlohmann::ordered_json spectrum_json(const SpectrumTable& table) {
  nlohmann::ordered_json j;
  j["params"] = params_json(table.params);
  j["potential"] = potential_json(table.potential);
  j["no_real_orbit"] = table.no_real_orbit;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"n", row.n}, {"r_n", row.r_n}, {"E_n", row.e_n}, {"p_phi", row.p_phi}});
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace dtm::io
