#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "dtm/io.hpp"

namespace {

using namespace dtm;

TEST(FormatDouble, RoundTripsShortest) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(-13.6), "-13.6");
  for (double v : {1.0 / 3.0, 6.02214076e23, -2.5e-300, std::numbers::pi})
    EXPECT_EQ(io::parse_double(io::format_double(v)), v);
}

TEST(ParseDouble, RejectsGarbage) {
  EXPECT_EQ(io::parse_double(" +2.5 "), 2.5);
  EXPECT_THROW(io::parse_double("2.5x"), FormatError);
  EXPECT_THROW(io::parse_double(""), FormatError);
}

TEST(PotentialCsv, RoundTrip) {
  const auto pot = PotentialModel::tabulated({0.5, 1, 2, 4, 8}, {-2, -1, -0.5, -0.25, -0.125});
  std::stringstream ss;
  io::write_potential_csv(ss, pot);
  EXPECT_EQ(ss.str().substr(0, 4), "r,U\n");
  const auto back = io::read_potential_csv(ss);
  for (double r : {0.5, 0.7, 3.0, 8.0}) EXPECT_EQ(evaluate_potential(back, r), evaluate_potential(pot, r));
  EXPECT_THROW(io::write_potential_csv(ss, PotentialModel::coulomb(1)), DomainError);
}

TEST(PotentialCsv, RejectsBadInput) {
  std::istringstream non_monotone("r,U\n1,0\n2,0\n2,0\n3,0\n4,0\n");
  EXPECT_THROW(io::read_potential_csv(non_monotone), FormatError);
  std::istringstream short_table("r,U\n1,0\n2,0\n3,0\n");
  EXPECT_THROW(io::read_potential_csv(short_table), FormatError);
  std::istringstream wrong_header("x,y\n1,0\n2,0\n3,0\n4,0\n");
  EXPECT_THROW(io::read_potential_csv(wrong_header), FormatError);
  std::istringstream extra_column("r,U\n1,0,0\n");
  EXPECT_THROW(io::read_potential_csv(extra_column), FormatError);
  std::istringstream negative("r,U\n-1,0\n2,0\n3,0\n4,0\n");
  EXPECT_THROW(io::read_potential_csv(negative), FormatError);
}

TEST(SpectrumCsv, ReadsConsecutiveLevels) {
  std::istringstream in("# hydrogen-like\r\nn,E\r\n1,-1\r\n2,-0.25\r\n3,-0.1111111111111111\r\n4,-0.0625\r\n");
  const auto spec = io::read_spectrum_csv(in);
  EXPECT_EQ(spec.kind(), "tabulated");
  EXPECT_EQ(spec.energy(2), -0.25);
  std::istringstream gap("n,E\n1,-1\n2,-0.25\n4,-0.0625\n5,-0.04\n");
  EXPECT_THROW(io::read_spectrum_csv(gap), FormatError);
  std::istringstream starts_at_zero("n,E\n0,-1\n1,-0.25\n2,-0.1\n3,-0.05\n");
  EXPECT_THROW(io::read_spectrum_csv(starts_at_zero), FormatError);
  std::istringstream three("n,E\n1,-1\n2,-0.25\n3,-0.1\n");
  EXPECT_THROW(io::read_spectrum_csv(three), FormatError);
}

TEST(SpectrumLawCsv, WritesLevels) {
  std::ostringstream out;
  io::write_spectrum_law_csv(out, SpectrumSpec::linear(0.5), 3);
  EXPECT_EQ(out.str(), "n,E\n1,0.5\n2,1\n3,1.5\n");
}

TEST(TrajectoryCsv, HeaderAndCartesianColumns) {
  const auto params = DiscreteParams(1, 1);
  const auto traj = simulate({1, 0, 0, std::numbers::pi / 2},
                             PotentialModel::coulomb(std::numbers::pi * std::numbers::pi / 4), params, 4);
  std::ostringstream out;
  io::write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,t,r,p_r,phi,p_phi,x,y");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 8), "0,0,1,0,");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(SpectrumTableExport, CsvAndJson) {
  const auto table = compute_spectrum(PotentialModel::hydrogen_reconstructed(1.6, 0.0, 1.0),
                                      DiscreteParams::with_xi(1.0), 3, 5);
  std::ostringstream out;
  io::write_spectrum_csv(out, table);
  EXPECT_EQ(out.str().substr(0, 16), "n,r_n,E_n,p_phi\n");
  const auto j = io::spectrum_json(table);
  EXPECT_EQ(j["potential"]["kind"], "hydrogen-reconstructed");
  EXPECT_EQ(j["no_real_orbit"], nlohmann::json::array({3}));
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["n"], 4);
  EXPECT_DOUBLE_EQ(j["params"]["xi"].get<double>(), 1.0);
}

TEST(Descriptors, SpectrumSpecJson) {
  EXPECT_EQ(io::spectrum_spec_json(SpectrumSpec::hydrogen(13.6))["gamma"], 13.6);
  const auto p = io::spectrum_spec_json(SpectrumSpec::coulomb(1, 1));
  EXPECT_EQ(p["law"], "power");
  EXPECT_DOUBLE_EQ(p["exponent"].get<double>(), -2.0 / 3.0);
  EXPECT_EQ(io::potential_json(PotentialModel::polynomial(1, 0.5))["sigma"], 0.5);
}

}  // namespace
