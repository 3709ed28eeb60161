#include <cmath>

#include <gtest/gtest.h>

#include "dtm/catalog.hpp"
#include "dtm/spectrum.hpp"

namespace {

using dtm::CatalogEntry;
using dtm::catalog_energy;
using dtm::catalog_radius;

TEST(CatalogRadius, Examples) {
  EXPECT_NEAR(catalog_radius(CatalogEntry::coulomb(1), 27, 1), 9.0, 1e-14);
  EXPECT_DOUBLE_EQ(catalog_radius(CatalogEntry::logarithmic(4), 1, 1), 2.0);
  EXPECT_DOUBLE_EQ(catalog_radius(CatalogEntry::polynomial(1, 1), 3, 1), 9.0);
  EXPECT_DOUBLE_EQ(catalog_radius(CatalogEntry::linear(1), 3, 1), 9.0);
}

TEST(CatalogEnergy, Examples) {
  EXPECT_DOUBLE_EQ(catalog_energy(CatalogEntry::coulomb(1), 1, 1), -0.5);
  EXPECT_DOUBLE_EQ(catalog_energy(CatalogEntry::linear(1), 2, 1), 6.0);
  const auto e = CatalogEntry::polynomial(1, 2.0 / 3.0);
  const double ratio = catalog_energy(e, 1, 1);
  for (int n = 2; n <= 10; ++n) EXPECT_NEAR(catalog_energy(e, n, 1) / n, ratio, 1e-13 * ratio);
}

TEST(CatalogEntry, DomainErrors) {
  EXPECT_THROW(CatalogEntry::coulomb(0), dtm::DomainError);
  EXPECT_THROW(CatalogEntry::linear(-1), dtm::DomainError);
  EXPECT_THROW(CatalogEntry::logarithmic(-1), dtm::DomainError);
  EXPECT_THROW(CatalogEntry::polynomial(1, 2), dtm::DomainError);
  EXPECT_THROW(CatalogEntry::polynomial(1, -0.5), dtm::DomainError);
  EXPECT_THROW(catalog_radius(CatalogEntry::coulomb(1), 0, 1), dtm::DomainError);
  EXPECT_THROW(catalog_energy(CatalogEntry::coulomb(1), 1, 0), dtm::DomainError);
}

TEST(CatalogEntry, PotentialMatchesKind) {
  EXPECT_EQ(CatalogEntry::coulomb(1).potential().kind(), "coulomb");
  EXPECT_EQ(CatalogEntry::linear(1).potential().kind(), "linear");
  EXPECT_EQ(CatalogEntry::logarithmic(1).potential().kind(), "logarithmic");
  EXPECT_EQ(CatalogEntry::polynomial(1, 0.5).potential().kind(), "polynomial");
  EXPECT_EQ(dtm::to_string(dtm::CatalogKind::Logarithmic), "logarithmic");
}

// The closed forms satisfy the quantization and energy identities.
TEST(CatalogEntry, ConsistencyIdentities) {
  const CatalogEntry entries[] = {
      CatalogEntry::coulomb(1.7),       CatalogEntry::linear(0.3),
      CatalogEntry::logarithmic(2.2),   CatalogEntry::polynomial(1.1, 2.0 / 3.0),
      CatalogEntry::polynomial(0.6, 1.5), CatalogEntry::polynomial(-0.8, -0.5),
      CatalogEntry::polynomial(-2.0, -1.5)};
  for (const auto& e : entries) {
    const auto pot = e.potential();
    for (double xi : {0.5, 1.0, 7.3}) {
      for (int n = 1; n <= 20; ++n) {
        const double r = catalog_radius(e, n, xi);
        const double lhs = xi * r / (n * n);
        const double du = dtm::potential_derivative(pot, r);
        ASSERT_LT(std::abs(lhs - du), 1e-12 * (std::abs(lhs) + std::abs(du)))
            << dtm::to_string(e.kind()) << " n=" << n;
        const double en = catalog_energy(e, n, xi);
        const double direct = 0.5 * r * du + dtm::evaluate_potential(pot, r);
        ASSERT_LT(std::abs(en - direct),
                  1e-12 * (std::abs(en) + std::abs(dtm::evaluate_potential(pot, r)) + 1.0))
            << dtm::to_string(e.kind()) << " n=" << n;
      }
    }
  }
}

TEST(CatalogEntry, PolynomialEnergyScalesWithXi) {
  for (double sigma : {2.0 / 3.0, 1.5, -0.5}) {
    const auto e = CatalogEntry::polynomial(sigma > 0 ? 1.0 : -1.0, sigma);
    for (int n = 1; n <= 10; ++n) {
      const double ratio = catalog_energy(e, n, 0.25) / catalog_energy(e, n, 1.0);
      EXPECT_NEAR(ratio, std::pow(0.25, -sigma / (2.0 - sigma)), 1e-12 * std::abs(ratio));
    }
  }
}

}  // namespace
