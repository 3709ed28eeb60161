#pragma once

#include <cmath>
#include <string>

#include "dtm/errors.hpp"
#include "dtm/potential.hpp"

namespace dtm {

enum class CatalogKind { Coulomb, Linear, Logarithmic, Polynomial };

inline std::string to_string(CatalogKind k) {
  switch (k) {
    case CatalogKind::Coulomb: return "coulomb";
    case CatalogKind::Linear: return "linear";
    case CatalogKind::Logarithmic: return "logarithmic";
    case CatalogKind::Polynomial: return "polynomial";
  }
  return "unknown";
}

// Closed-form circular-orbit radii and energies for the power-law family.
// Kept independent of the numeric solver so it can serve as its oracle.
class CatalogEntry {
 public:
  static CatalogEntry coulomb(double alpha) { return {CatalogKind::Coulomb, attractive(alpha), -1.0}; }
  static CatalogEntry linear(double alpha) { return {CatalogKind::Linear, attractive(alpha), 1.0}; }
  static CatalogEntry logarithmic(double alpha) {
    return {CatalogKind::Logarithmic, attractive(alpha), 0.0};
  }
  static CatalogEntry polynomial(double alpha, double sigma) {
    if (!(sigma > -2.0 && sigma < 2.0) || sigma == 0.0)
      throw DomainError("catalog polynomial requires sigma in (-2, 2) excluding 0");
    if (!(std::isfinite(alpha) && alpha * sigma > 0.0))
      throw DomainError("catalog polynomial requires alpha * sigma > 0");
    return {CatalogKind::Polynomial, alpha, sigma};
  }

  CatalogKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  // Exponent of the power law; unused for the logarithmic entry.
  double sigma() const noexcept { return sigma_; }

  PotentialModel potential() const {
    switch (kind_) {
      case CatalogKind::Coulomb: return PotentialModel::coulomb(alpha_);
      case CatalogKind::Linear: return PotentialModel::linear(alpha_);
      case CatalogKind::Logarithmic: return PotentialModel::logarithmic(alpha_);
      case CatalogKind::Polynomial: break;
    }
    return PotentialModel::polynomial(alpha_, sigma_);
  }

 private:
  CatalogEntry(CatalogKind k, double alpha, double sigma) : kind_(k), alpha_(alpha), sigma_(sigma) {}

  static double attractive(double alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
      throw DomainError("catalog entry requires alpha > 0 (attractive field)");
    return alpha;
  }

  CatalogKind kind_;
  double alpha_;
  double sigma_;
};

namespace detail {
inline void check_catalog_args(double n, double xi) {
  if (!(n > 0.0)) throw DomainError("orbit index must be positive");
  if (!(std::isfinite(xi) && xi > 0.0)) throw DomainError("xi must be positive");
}
}  // namespace detail

inline double catalog_radius(const CatalogEntry& e, double n, double xi) {
  detail::check_catalog_args(n, xi);
  const double a = e.alpha();
  switch (e.kind()) {
    case CatalogKind::Coulomb: return std::cbrt(n * n) * std::cbrt(a / xi);
    case CatalogKind::Linear: return n * n * a / xi;
    case CatalogKind::Logarithmic: return n * std::sqrt(a / xi);
    case CatalogKind::Polynomial: break;
  }
  const double s = e.sigma();
  return std::pow(n * n * a * s / xi, 1.0 / (2.0 - s));
}

inline double catalog_energy(const CatalogEntry& e, double n, double xi) {
  detail::check_catalog_args(n, xi);
  const double a = e.alpha();
  switch (e.kind()) {
    case CatalogKind::Coulomb: return -0.5 / std::cbrt(n * n) * std::cbrt(a * a * xi);
    case CatalogKind::Linear: return 3.0 * n * n * a * a / (2.0 * xi);
    case CatalogKind::Logarithmic: return a * (0.5 + std::log(n * std::sqrt(a / xi)));
    case CatalogKind::Polynomial: break;
  }
  const double s = e.sigma();
  return 0.5 * a * (2.0 + s) * std::pow(n * n * a * s / xi, s / (2.0 - s));
}

}  // namespace dtm
