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

#ifndef SEARCHCONTEST_HIERARCHY_H_
#define SEARCHCONTEST_HIERARCHY_H_

// Designer competition: M designers each run an internal winner-take-all
// contest among N workers and the designer whose best worker output is
// highest collects the meta prize. A designer's internal prize pins the
// internal threshold, so designers effectively choose thresholds.

#include <string>
#include <vector>

#include "searchcontest/distribution.h"

namespace searchcontest {

struct DesignerParams {
  int n_designers = 2;  // M
  int team_size = 1;    // N
  double cost = 0.0;    // per worker draw
  double meta_prize = 1.0;

  void validate() const;
  // 1 - F(b_D) = c M (N M - 1) / (meta_prize (M - 1)).
  double acceptance_prob() const;
  bool viable() const { return acceptance_prob() < 1.0; }
};

struct DesignerEquilibrium {
  double threshold = 0.0;
  double threshold_quantile = 0.0;  // F(b_D)
  double internal_prize = 0.0;      // N c / (1 - F(b_D))
  double designer_value = 0.0;
  double dissipation_ratio = 0.0;  // M * internal_prize / meta_prize
};

// Throws not-viable unless the acceptance probability is below one.
DesignerEquilibrium solve_designer(const DesignerParams& params,
                                   const Distribution& d);

struct DesignerFocReport {
  double threshold = 0.0;
  double win_prob_at_equilibrium = 0.0;  // should be 1 / M
  double fd_derivative = 0.0;            // dP/db_m by finite differences
  double closed_form_derivative = 0.0;
  double relative_error = 0.0;
  // Omega dP/db_m against the marginal internal prize N c f / (1 - F)^2.
  double marginal_benefit = 0.0;
  double marginal_cost = 0.0;
  double foc_relative_gap = 0.0;
  std::vector<std::string> warnings;
};

// Winning probability of a designer using quantile threshold `deviation_q`
// while every rival uses `equilibrium_q`.
double designer_win_probability(int n_designers, int team_size,
                                 double equilibrium_q, double deviation_q);

// Central difference in quantile space with one Richardson step, mapped
// to x-space through f(b). Steps outside [1e-8, 1e-2] add a warning.
DesignerFocReport verify_designer_foc(const DesignerParams& params,
                                      const Distribution& d,
                                      double step = 1e-5);

struct DesignerComparison {
  double designer_quantile = 0.0;
  // Individual contest among all N M workers for a prize equal to the
  // meta prize.
  double individual_quantile = 0.0;
  bool designer_lower = false;
};

DesignerComparison compare_designer_individual(const DesignerParams& params,
                                               const Distribution& d);

struct LargeMarketRow {
  int n_designers = 0;
  double accept_prob = 0.0;
  double limit_gap = 0.0;  // distance to N c / omega
  bool viable = false;
};

// Per-designer prize omega held fixed, so the meta prize is M omega.
std::vector<LargeMarketRow> large_market_limit(int team_size, double cost,
                                               double per_designer_prize,
                                               int m_min, int m_max);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_HIERARCHY_H_
