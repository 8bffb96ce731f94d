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

#include "searchcontest/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "searchcontest/equilibrium.h"
#include "searchcontest/error.h"
#include "searchcontest/numerics.h"

namespace searchcontest {

namespace {

constexpr int kUniformGrid = 128;
constexpr int kLogGrid = 128;
constexpr double kMinTail = 1e-14;
constexpr double kMaxLogTail = 1e-1;

void require_finite_mean(const Distribution& d) {
  if (!d.has_finite_mean()) {
    throw ContestError(ErrorKind::kDivergentObjective,
                       "E[max] diverges for " + d.label());
  }
}

void require_inputs(int n_players, double cost) {
  if (n_players < 1) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_players must be >= 1");
  }
  if (!(std::isfinite(cost) && cost >= 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be >= 0");
  }
}

// dx/dtau of the upper quantile, up to sign: 1 / f(F^{-1}(1 - tau)).
double quantile_slope(const Distribution& d, double tau) {
  return 1.0 / d.density(d.upper_quantile(tau));
}

double tail_of(const Distribution& d, double b) {
  if (b <= d.support_lower()) return 1.0;
  return d.survival(b);
}

double expected_max_from_tail(double tail, int n, const Distribution& d) {
  const double b = tail >= 1.0 ? d.support_lower() : d.upper_quantile(tail);
  auto g = [&](double r) {
    const double beaten = -std::expm1(n * std::log1p(-r));  // 1 - (1 - r)^N
    return beaten * tail * quantile_slope(d, tail * r);
  };
  return b + numerics::integrate_unit_tail(g);
}

double welfare_from_tail(double tail, int n, double cost, const Distribution& d) {
  return expected_max_from_tail(tail, n, d) - n * cost / tail;
}

}  // namespace

double expected_max_truncated(double b, int n_players, const Distribution& d) {
  require_inputs(n_players, 0.0);
  require_finite_mean(d);
  const double tail = tail_of(d, b);
  if (!(tail > 1e-12)) {
    throw ContestError(ErrorKind::kDegenerateTruncation,
                       "F(b) is numerically 1");
  }
  return expected_max_from_tail(tail, n_players, d);
}

double planner_welfare(double b, int n_players, double cost,
                       const Distribution& d) {
  require_inputs(n_players, cost);
  return expected_max_truncated(b, n_players, d) -
         n_players * cost / tail_of(d, b);
}

double planner_foc_lhs(double tail, int n_players, const Distribution& d) {
  const int n = n_players;
  auto g = [&](double r) {
    const double below = std::exp((n - 1) * std::log1p(-r));
    return below * tail * r * tail * quantile_slope(d, tail * r);
  };
  return numerics::integrate_unit_tail(g);
}

PlannerSolution solve_planner(int n_players, double cost,
                              const Distribution& d) {
  require_inputs(n_players, cost);
  require_finite_mean(d);
  if (!(cost > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be positive");
  }
  std::vector<double> tails;
  for (int i = 0; i < kUniformGrid; ++i) {
    tails.push_back(1.0 - static_cast<double>(i) / kUniformGrid);
  }
  const double log_lo = std::log(kMinTail);
  const double log_hi = std::log(kMaxLogTail);
  for (int i = 0; i < kLogGrid; ++i) {
    tails.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (kLogGrid - 1)));
  }
  std::sort(tails.begin(), tails.end());
  tails.erase(std::unique(tails.begin(), tails.end()), tails.end());

  auto foc = [&](double t) { return planner_foc_lhs(t, n_players, d) - cost; };
  std::vector<double> candidates;
  for (const auto& [lo, hi] : numerics::sign_change_brackets(foc, tails)) {
    candidates.push_back(lo == hi ? lo : numerics::solve_bracketed(foc, lo, hi, 1e-16));
  }

  PlannerSolution best;
  best.candidate_roots = static_cast<int>(candidates.size());
  double best_welfare = -std::numeric_limits<double>::infinity();
  double best_tail = 1.0;
  bool best_corner = true;
  auto consider = [&](double t, bool corner) {
    const double w = welfare_from_tail(t, n_players, cost, d);
    if (w > best_welfare) {
      best_welfare = w;
      best_tail = t;
      best_corner = corner;
    }
  };
  for (double t : candidates) consider(t, t >= 1.0);
  consider(1.0, true);

  best.corner = best_corner;
  best.acceptance_prob = best_tail;
  best.threshold =
      best_tail >= 1.0 ? d.support_lower() : d.upper_quantile(best_tail);
  best.welfare = best_welfare;
  best.efficient_prize = n_players * cost / best_tail;
  best.foc_residual = foc(best_tail);
  return best;
}

std::string to_string(SearchClass c) {
  switch (c) {
    case SearchClass::kOversearch: return "oversearch";
    case SearchClass::kEfficient: return "efficient";
    case SearchClass::kUndersearch: return "undersearch";
  }
  return "unknown";
}

PrizeClassification classify_prize(double prize, int n_players, double cost,
                                   const Distribution& d) {
  const ContestParams params{n_players, cost, prize};
  const SymmetricEquilibrium eq = solve_symmetric(params, d);
  const PlannerSolution plan = solve_planner(n_players, cost, d);
  PrizeClassification out;
  out.competitive_threshold = eq.threshold;
  out.planner_threshold = plan.threshold;
  out.gap = eq.threshold - plan.threshold;
  const double tol = 1e-9 * std::max(1.0, std::fabs(plan.threshold));
  if (std::fabs(out.gap) <= tol) {
    out.kind = SearchClass::kEfficient;
  } else {
    out.kind = out.gap > 0.0 ? SearchClass::kOversearch : SearchClass::kUndersearch;
  }
  return out;
}

double efficient_prize_integral(int n_players, double cost,
                                const Distribution& d) {
  const PlannerSolution plan = solve_planner(n_players, cost, d);
  const double tail = plan.acceptance_prob;
  const int n = n_players;
  auto g = [&](double r) {
    const double x = d.upper_quantile(tail * r);
    const double h = d.hazard(x);
    if (!(h >= 0.0) || std::isnan(h)) {
      throw ContestError(ErrorKind::kNumericFailure, "hazard evaluation failed");
    }
    return std::exp((n - 1) * std::log1p(-r)) / h;
  };
  return n * numerics::integrate_unit_tail(g);
}

HazardOrderReport hazard_order_check(const Distribution& d1,
                                     const Distribution& d2, int n_players,
                                     double cost, int grid) {
  HazardOrderReport report;
  report.grid_points = std::max(grid, 2);
  const double lo = std::max(d1.support_lower(), d2.support_lower());
  double hi = std::min(d1.support_upper(), d2.support_upper());
  if (!std::isfinite(hi)) {
    // Cover the bulk of both laws; hazards of the built-in families are
    // monotone far out.
    hi = std::max(d1.bounded_above() ? lo : d1.upper_quantile(1e-9),
                  d2.bounded_above() ? lo : d2.upper_quantile(1e-9));
  }
  report.dominance = true;
  for (int i = 0; i < report.grid_points; ++i) {
    // Right-open grid: hazards blow up at a finite upper end.
    const double x = lo + (hi - lo) * i / report.grid_points;
    const double h1 = d1.hazard(x);
    const double h2 = d2.hazard(x);
    if (h1 < h2 * (1.0 - 1e-12)) {
      report.dominance = false;
      report.first_violation = x;
      break;
    }
  }
  report.efficient_prize_1 = solve_planner(n_players, cost, d1).efficient_prize;
  report.efficient_prize_2 = solve_planner(n_players, cost, d2).efficient_prize;
  report.ordering_holds =
      report.efficient_prize_1 <= report.efficient_prize_2 * (1.0 + 1e-9);
  report.consistent = !report.dominance || report.ordering_holds;
  return report;
}

}  // namespace searchcontest
