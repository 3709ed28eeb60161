#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

#include "dtm/errors.hpp"

namespace dtm::roots {

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  bool exact() const noexcept { return f_lo == 0.0 || f_hi == 0.0; }
};

struct ExpansionOptions {
  double start = 1.0;
  double factor = 2.0;
  int max_expansions = 60;
  // Hard limits of the search interval; the start point is clamped into it.
  double lower_limit = 0.0;
  double upper_limit = std::numeric_limits<double>::infinity();
};

// Geometric bracket search for a function that is negative to the left of
// its root and positive to the right. Expands upward while f < 0 and downward
// while f > 0.
template <class F>
Bracket expand_bracket(F&& f, const ExpansionOptions& opts = {}) {
  double x = std::clamp(opts.start, opts.lower_limit, opts.upper_limit);
  if (x <= 0.0) x = opts.upper_limit > 1.0 ? 1.0 : opts.upper_limit;
  double fx = f(x);
  if (fx == 0.0) return {x, x, fx, fx};
  const bool upward = fx < 0.0;
  for (int i = 0; i < opts.max_expansions; ++i) {
    double next = upward ? x * opts.factor : x / opts.factor;
    next = std::clamp(next, opts.lower_limit, opts.upper_limit);
    if (next == x || next <= 0.0) break;
    const double fn = f(next);
    if (fn == 0.0) return {next, next, fn, fn};
    if ((fn > 0.0) == upward) {
      return upward ? Bracket{x, next, fx, fn} : Bracket{next, x, fn, fx};
    }
    x = next;
    fx = fn;
  }
  throw BracketError("no sign change found while expanding the bracket " +
                     std::string(upward ? "upward" : "downward") + " to r = " +
                     std::to_string(x));
}

// Hybrid bisection / inverse-interpolation refinement (TOMS 748) until the
// bracket's relative width drops below rel_width. Returns the endpoint with
// the smaller residual.
template <class F>
double refine_root(F&& f, const Bracket& b, double rel_width = 1e-14) {
  if (b.f_lo == 0.0) return b.lo;
  if (b.f_hi == 0.0) return b.hi;
  if ((b.f_lo > 0.0) == (b.f_hi > 0.0)) throw BracketError("bracket does not straddle a root");
  auto tol = [rel_width](double a, double c) {
    return std::abs(c - a) <= rel_width * std::min(std::abs(a), std::abs(c));
  };
  std::uintmax_t max_iter = 400;
  auto [a, c] = boost::math::tools::toms748_solve(f, b.lo, b.hi, b.f_lo, b.f_hi, tol, max_iter);
  if (a == c) return a;
  return std::abs(f(a)) <= std::abs(f(c)) ? a : c;
}

// Number of sign changes of f over `samples` log-spaced points in [lo, hi].
// Exact zeros are skipped.
template <class F>
int count_sign_changes(F&& f, double lo, double hi, int samples = 32) {
  if (!(lo > 0.0 && hi >= lo) || samples < 2) return 0;
  const double span = std::log(hi / lo);
  int changes = 0;
  int last_sign = 0;
  for (int i = 0; i < samples; ++i) {
    const double x = i == samples - 1 ? hi : lo * std::exp(span * i / (samples - 1));
    const double v = f(x);
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes;
}

}  // namespace dtm::roots
