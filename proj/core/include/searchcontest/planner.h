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

#ifndef SEARCHCONTEST_PLANNER_H_
#define SEARCHCONTEST_PLANNER_H_

// Welfare benchmark: a planner picks the common threshold b to maximise
// E[max of N accepted values] - N c / (1 - F(b)). Internally everything is
// parameterised by the tail t = 1 - F(b) so unbounded supports need no
// special handling.

#include <string>

#include "searchcontest/distribution.h"

namespace searchcontest {

struct PlannerSolution {
  double threshold = 0.0;        // b*
  double welfare = 0.0;          // W(b*)
  double efficient_prize = 0.0;  // N c / (1 - F(b*))
  double acceptance_prob = 0.0;  // 1 - F(b*)
  double foc_residual = 0.0;     // LHS(b*) - c
  bool corner = false;           // b* at the support lower bound
  int candidate_roots = 0;
};

// E[max of N draws from F truncated at b] - N c / (1 - F(b)). Throws
// divergent-objective when F has no finite mean and
// degenerate-truncation when F(b) is numerically 1.
double planner_welfare(double b, int n_players, double cost,
                       const Distribution& d);

// E[max of N draws from F truncated at b] alone.
double expected_max_truncated(double b, int n_players, const Distribution& d);

// Marginal value of raising b, int_b [(F - F(b)) / (1 - F(b))]^{N-1} (1 - F),
// as a function of the tail t = 1 - F(b).
double planner_foc_lhs(double tail, int n_players, const Distribution& d);

// Brackets FOC roots over a mixed uniform/logarithmic tail grid and
// returns the global welfare maximiser among the roots and the corner at
// the support lower bound.
PlannerSolution solve_planner(int n_players, double cost,
                              const Distribution& d);

enum class SearchClass { kOversearch, kEfficient, kUndersearch };
std::string to_string(SearchClass c);

struct PrizeClassification {
  SearchClass kind = SearchClass::kEfficient;
  double competitive_threshold = 0.0;  // lambda
  double planner_threshold = 0.0;      // b*
  double gap = 0.0;                    // lambda - b*
};

// |gap| <= 1e-9 max(1, |b*|) counts as efficient. Throws not-viable when
// N c > prize.
PrizeClassification classify_prize(double prize, int n_players, double cost,
                                   const Distribution& d);

// N int_0^1 u^{N-1} / h(x*(u)) du with x*(u) = F^{-1}(F(b*) + u (1 - F(b*))).
double efficient_prize_integral(int n_players, double cost,
                                const Distribution& d);

struct HazardOrderReport {
  bool dominance = false;  // h1 >= h2 on the common-support grid
  double first_violation = 0.0;  // x of the first grid failure, if any
  double efficient_prize_1 = 0.0;
  double efficient_prize_2 = 0.0;
  bool ordering_holds = false;  // W*_1 <= W*_2
  // False only when dominance holds and the ordering does not.
  bool consistent = true;
  int grid_points = 0;
};

HazardOrderReport hazard_order_check(const Distribution& d1,
                                     const Distribution& d2, int n_players,
                                     double cost, int grid);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_PLANNER_H_
