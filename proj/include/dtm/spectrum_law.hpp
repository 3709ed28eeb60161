#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dtm/errors.hpp"
#include "dtm/interpolation.hpp"

namespace dtm {

namespace laws {

// E(n) = -gamma / n^2
struct Hydrogen {
  double gamma;
};

// E(n) = alpha n
struct Linear {
  double alpha;
};

// E(n) = coefficient * n^exponent
struct Power {
  double coefficient;
  double exponent;
};

// E given at n = 1..N, interpolated with a monotone C1 cubic.
struct Tabulated {
  MonotoneCubic curve;
};

}  // namespace laws

// Prescribed energy law E(n) for real n >= 1, with slope and the cumulative
// integral from 1 to n.
class SpectrumSpec {
 public:
  using Variant = std::variant<laws::Hydrogen, laws::Linear, laws::Power, laws::Tabulated>;

  static SpectrumSpec hydrogen(double gamma) {
    if (!(std::isfinite(gamma) && gamma > 0.0)) throw DomainError("gamma must be positive");
    return SpectrumSpec(laws::Hydrogen{gamma});
  }
  static SpectrumSpec linear(double alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw DomainError("alpha must be positive");
    return SpectrumSpec(laws::Linear{alpha});
  }
  static SpectrumSpec power(double coefficient, double exponent) {
    if (!std::isfinite(coefficient) || !std::isfinite(exponent) || coefficient == 0.0)
      throw DomainError("power law needs a finite nonzero coefficient and finite exponent");
    return SpectrumSpec(laws::Power{coefficient, exponent});
  }
  // Energies of circular orbits in -alpha/r at discreteness xi:
  // E(n) = -(1/2) (alpha^2 xi)^(1/3) n^(-2/3).
  static SpectrumSpec coulomb(double alpha, double xi) {
    if (!(alpha > 0.0 && xi > 0.0)) throw DomainError("coulomb law needs alpha, xi > 0");
    return power(-0.5 * std::cbrt(alpha * alpha * xi), -2.0 / 3.0);
  }
  // energies[i] is E(i + 1).
  static SpectrumSpec tabulated(std::vector<double> energies) {
    if (energies.size() < 4) throw DomainError("tabulated spectrum needs at least 4 levels");
    std::vector<double> n(energies.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = static_cast<double>(i + 1);
    return SpectrumSpec(laws::Tabulated{MonotoneCubic(std::move(n), std::move(energies))});
  }

  const Variant& variant() const noexcept { return v_; }
  template <class T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v_);
  }

  std::string kind() const {
    return std::visit(
        [](const auto& l) -> std::string {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, laws::Hydrogen>) return "hydrogen";
          else if constexpr (std::is_same_v<T, laws::Linear>) return "linear";
          else if constexpr (std::is_same_v<T, laws::Power>) return "power";
          else return "tabulated";
        },
        v_);
  }

  // Largest n at which the law is defined.
  double max_index() const {
    if (auto* t = get_if<laws::Tabulated>()) return t->curve.back();
    return std::numeric_limits<double>::infinity();
  }

  bool analytic_integral() const noexcept { return !std::holds_alternative<laws::Tabulated>(v_); }

  double energy(double n) const {
    check(n);
    return std::visit(
        [n](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, laws::Hydrogen>) return -l.gamma / (n * n);
          else if constexpr (std::is_same_v<T, laws::Linear>) return l.alpha * n;
          else if constexpr (std::is_same_v<T, laws::Power>) return l.coefficient * std::pow(n, l.exponent);
          else return l.curve(n);
        },
        v_);
  }

  double slope(double n) const {
    check(n);
    return std::visit(
        [n](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, laws::Hydrogen>) return 2.0 * l.gamma / (n * n * n);
          else if constexpr (std::is_same_v<T, laws::Linear>) return l.alpha;
          else if constexpr (std::is_same_v<T, laws::Power>)
            return l.coefficient * l.exponent * std::pow(n, l.exponent - 1.0);
          else return l.curve.derivative(n);
        },
        v_);
  }

  // Integral of E(k) over k in [1, n].
  double cumulative(double n) const {
    check(n);
    return std::visit(
        [n](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, laws::Hydrogen>) return l.gamma * (1.0 / n - 1.0);
          else if constexpr (std::is_same_v<T, laws::Linear>) return 0.5 * l.alpha * (n * n - 1.0);
          else if constexpr (std::is_same_v<T, laws::Power>) {
            if (l.exponent == -1.0) return l.coefficient * std::log(n);
            const double p1 = l.exponent + 1.0;
            return l.coefficient * std::expm1(p1 * std::log(n)) / p1;
          } else {
            return integrate_tabulated(l.curve, n);
          }
        },
        v_);
  }

 private:
  explicit SpectrumSpec(Variant v) : v_(std::move(v)) {}

  void check(double n) const {
    if (!(n >= 1.0) || !(n <= max_index()))
      throw DomainError("energy law queried at n = " + std::to_string(n) + " outside [1, " +
                        std::to_string(max_index()) + "]");
  }

  // Adaptive Gauss-Kronrod over the unit panels between knots, where the
  // interpolant is a single cubic.
  static double integrate_tabulated(const MonotoneCubic& curve, double n) {
    using boost::math::quadrature::gauss_kronrod;
    const double scale = 1.0 + std::abs(curve.y().front());
    double total = 0.0;
    for (double a = 1.0; a < n; a += 1.0) {
      const double b = std::min(a + 1.0, n);
      double err = 0.0;
      total += gauss_kronrod<double, 15>::integrate(
          [&curve](double k) { return curve(k); }, a, b, 10, 1e-14, &err);
      if (err > 1e-12 * scale)
        throw DomainError("energy-law quadrature did not reach its tolerance");
    }
    return total;
  }

  Variant v_;
};

}  // namespace dtm
