// Copyright 2026 The searchcontest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEARCHCONTEST_NUMERICS_H_
#define SEARCHCONTEST_NUMERICS_H_

// Thin adapters over Boost.Math quadrature and bracketed root finding,
// translating their failures into ContestError.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "searchcontest/error.h"

namespace searchcontest::numerics {

inline constexpr double kDefaultRelTol = 1e-12;
inline constexpr unsigned kDefaultMaxDepth = 20;

// Adaptive 31-point Gauss-Kronrod on [a, b]. A panel is accepted when its
// Kronrod-Gauss error estimate meets its share of rel_tol * int |f|, or
// falls to the round-off floor of the panel, whichever is larger.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = kDefaultRelTol,
                 unsigned max_depth = kDefaultMaxDepth) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  if (!(a < b)) return 0.0;
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  // Single 31-point panel. Boost reports the error of a depth-0 panel in
  // [-1, 1] units, so it is rescaled to the panel width here.
  auto panel = [&f](double lo, double hi, double& error, double& l1) {
    const double value = Rule::integrate(f, lo, hi, 0, 0.0, &error, &l1);
    error *= 0.5 * (hi - lo);
    return value;
  };
  double error = 0.0;
  double l1 = 0.0;
  const double whole = panel(a, b, error, l1);
  const double budget = rel_tol * l1;
  auto recurse = [&](auto&& self, double lo, double hi, double value,
                     double err, double abs_value, double share,
                     unsigned depth) -> double {
    if (err <= std::max(share, kRoundoff * abs_value) || depth >= max_depth) {
      return value;
    }
    const double mid = 0.5 * (lo + hi);
    double e1 = 0.0, a1 = 0.0, e2 = 0.0, a2 = 0.0;
    const double v1 = panel(lo, mid, e1, a1);
    const double v2 = panel(mid, hi, e2, a2);
    return self(self, lo, mid, v1, e1, a1, 0.5 * share, depth + 1) +
           self(self, mid, hi, v2, e2, a2, 0.5 * share, depth + 1);
  };
  const double value = recurse(recurse, a, b, whole, error, l1, budget, 0);
  if (!std::isfinite(value)) {
    throw ContestError(ErrorKind::kNumericFailure,
                       "quadrature produced a non-finite value");
  }
  return value;
}

// Integrates g(r) over r in (0, 1] where g may carry an integrable
// power-law singularity (1/r^p, p < 1) at r = 0. With r = s^4 the
// transformed integrand 4 s^3 g(s^4) stays bounded for p <= 3/4 and
// integrable otherwise. g receives r directly so callers can build
// tail probabilities without cancellation.
template <class G>
double integrate_unit_tail(G&& g, double rel_tol = kDefaultRelTol) {
  auto transformed = [&](double s) {
    const double s2 = s * s;
    const double r = s2 * s2;
    if (r <= 0.0) return 0.0;
    return 4.0 * s2 * s * g(r);
  };
  return integrate(transformed, 0.0, 1.0, rel_tol);
}

// Bisection to an absolute bracket width of `tol`. Requires a sign change
// (or an exact zero) at the endpoints.
template <class F>
double bisect(F&& f, double lo, double hi, double tol,
              std::uintmax_t max_iter = 400) {
  auto width = [tol](double a, double b) { return std::fabs(b - a) <= tol; };
  try {
    const auto bracket =
        boost::math::tools::bisect(f, lo, hi, width, max_iter);
    return 0.5 * (bracket.first + bracket.second);
  } catch (const std::exception& e) {
    throw ContestError(ErrorKind::kNumericFailure,
                       std::string("bisection failed: ") + e.what());
  }
}

// TOMS 748 on a sign-changing bracket; terminates at `tol` absolute width.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double tol = 1e-15,
                       std::uintmax_t max_iter = 200) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw ContestError(ErrorKind::kNumericFailure,
                       "root bracket has no sign change");
  }
  auto width = [tol](double a, double b) { return std::fabs(b - a) <= tol; };
  try {
    std::uintmax_t iters = max_iter;
    const auto bracket = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, width, iters);
    return 0.5 * (bracket.first + bracket.second);
  } catch (const std::exception& e) {
    throw ContestError(ErrorKind::kNumericFailure,
                       std::string("root finding failed: ") + e.what());
  }
}

// Adjacent grid intervals [g_i, g_{i+1}] on which f changes sign. An exact
// zero at a grid node yields the degenerate interval [g_i, g_i].
template <class F>
std::vector<std::pair<double, double>> sign_change_brackets(
    F&& f, std::span<const double> grid) {
  std::vector<std::pair<double, double>> out;
  if (grid.empty()) return out;
  double prev_x = grid[0];
  double prev_f = f(prev_x);
  if (prev_f == 0.0) out.emplace_back(prev_x, prev_x);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double x = grid[i];
    const double fx = f(x);
    if (fx == 0.0) {
      out.emplace_back(x, x);
    } else if (prev_f != 0.0 && std::isfinite(prev_f) && std::isfinite(fx) &&
               ((prev_f > 0.0) != (fx > 0.0))) {
      out.emplace_back(prev_x, x);
    }
    prev_x = x;
    prev_f = fx;
  }
  return out;
}

}  // namespace searchcontest::numerics

#endif  // SEARCHCONTEST_NUMERICS_H_
