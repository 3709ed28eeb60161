#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dtm/errors.hpp"

namespace dtm {

// Monotonicity-preserving piecewise cubic Hermite interpolant.
//
// Knot slopes start from a fourth-order (five-point, nonuniform) Lagrange
// derivative and are then limited with Hyman's filter: the slope is zeroed at
// local extrema of the data and otherwise capped at three times the smaller
// adjacent secant. The result is C1, reproduces the knots exactly, never
// oscillates on monotone data, and keeps fourth-order accuracy where the
// limiter is inactive.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size())
      throw DomainError("interpolant abscissae and ordinates differ in length");
    if (x_.size() < 4) throw DomainError("interpolant needs at least 4 knots");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
        throw DomainError("interpolant knots must be finite");
      if (i > 0 && !(x_[i] > x_[i - 1]))
        throw DomainError("interpolant abscissae must be strictly increasing");
    }
    compute_slopes();
  }

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> slopes() const noexcept { return d_; }
  double front() const noexcept { return x_.front(); }
  double back() const noexcept { return x_.back(); }

  // Caller guarantees front() <= t <= back().
  double operator()(double t) const {
    const std::size_t i = segment(t);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  }

  double derivative(double t) const {
    const std::size_t i = segment(t);
    const double h = x_[i + 1] - x_[i];
    const double s = (t - x_[i]) / h;
    const double s2 = s * s;
    const double dh00 = (6.0 * s2 - 6.0 * s) / h;
    const double dh10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double dh01 = (-6.0 * s2 + 6.0 * s) / h;
    const double dh11 = 3.0 * s2 - 2.0 * s;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
  }

 private:
  std::size_t segment(double t) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
  }

  // Derivative at x_[at] of the Lagrange polynomial through knots [first, first + count).
  double lagrange_slope(std::size_t first, std::size_t count, std::size_t at) const {
    const double xa = x_[at];
    double sum = 0.0;
    for (std::size_t k = first; k < first + count; ++k) {
      double w;
      if (k == at) {
        w = 0.0;
        for (std::size_t m = first; m < first + count; ++m)
          if (m != at) w += 1.0 / (xa - x_[m]);
      } else {
        double num = 1.0;
        double den = 1.0;
        for (std::size_t m = first; m < first + count; ++m) {
          if (m == k) continue;
          den *= x_[k] - x_[m];
          if (m != at) num *= xa - x_[m];
        }
        w = num / den;
      }
      sum += w * y_[k];
    }
    return sum;
  }

  void compute_slopes() {
    const std::size_t n = x_.size();
    const std::size_t width = std::min<std::size_t>(5, n);
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    d_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t first = i >= width / 2 ? i - width / 2 : 0;
      first = std::min(first, n - width);
      d_[i] = lagrange_slope(first, width, i);
    }

    auto limit = [](double d, double s) {
      if (s == 0.0 || d * s <= 0.0) return 0.0;
      const double cap = 3.0 * std::abs(s);
      return std::abs(d) > cap ? std::copysign(cap, s) : d;
    };
    d_[0] = limit(d_[0], secant[0]);
    d_[n - 1] = limit(d_[n - 1], secant[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sl = secant[i - 1];
      const double sr = secant[i];
      if (sl * sr <= 0.0) {
        d_[i] = 0.0;
        continue;
      }
      const double smaller = std::abs(sl) < std::abs(sr) ? sl : sr;
      d_[i] = limit(d_[i], smaller);
    }
  }

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace dtm
