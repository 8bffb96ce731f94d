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

#include "searchcontest/hierarchy.h"

#include <algorithm>
#include <cmath>

#include "searchcontest/equilibrium.h"
#include "searchcontest/error.h"
#include "searchcontest/numerics.h"

namespace searchcontest {

void DesignerParams::validate() const {
  if (n_designers < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_designers must be >= 2");
  }
  if (team_size < 1) {
    throw ContestError(ErrorKind::kInvalidParameter, "team_size must be >= 1");
  }
  if (!(std::isfinite(cost) && cost > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be positive");
  }
  if (!(std::isfinite(meta_prize) && meta_prize > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "meta_prize must be positive");
  }
}

double DesignerParams::acceptance_prob() const {
  const double m = n_designers;
  const double n = team_size;
  return cost * m * (n * m - 1.0) / (meta_prize * (m - 1.0));
}

DesignerEquilibrium solve_designer(const DesignerParams& params,
                                   const Distribution& d) {
  params.validate();
  const double p = params.acceptance_prob();
  if (!(p < 1.0)) {
    throw ContestError(ErrorKind::kNotViable,
                       "designer contest has no interior threshold");
  }
  const double m = params.n_designers;
  const double n = params.team_size;
  DesignerEquilibrium eq;
  eq.threshold_quantile = 1.0 - p;
  eq.threshold = d.upper_quantile(p);
  eq.internal_prize = n * params.cost / p;
  eq.designer_value = params.meta_prize * (n - 1.0) / (m * (n * m - 1.0));
  eq.dissipation_ratio = n * (m - 1.0) / (n * m - 1.0);
  return eq;
}

double designer_win_probability(int n_designers, int team_size,
                                double equilibrium_q, double deviation_q) {
  const double a = equilibrium_q;
  const double am = deviation_q;
  const int n = team_size;
  const double rival_power = static_cast<double>(n) * (n_designers - 1);
  auto integrand = [&](double v) {
    const double rivals = std::pow((v - a) / (1.0 - a), rival_power);
    const double own = n * std::pow((v - am) / (1.0 - am), n - 1) / (1.0 - am);
    return rivals * own;
  };
  return numerics::integrate(integrand, std::max(a, am), 1.0, 1e-14);
}

DesignerFocReport verify_designer_foc(const DesignerParams& params,
                                      const Distribution& d, double step) {
  const DesignerEquilibrium eq = solve_designer(params, d);
  const int m = params.n_designers;
  const int n = params.team_size;
  const double a = eq.threshold_quantile;
  DesignerFocReport report;
  report.threshold = eq.threshold;
  if (step > 1e-2) report.warnings.push_back("step above 1e-2: truncation error dominates");
  if (step < 1e-8) report.warnings.push_back("step below 1e-8: round-off dominates");
  auto p = [&](double q) { return designer_win_probability(m, n, a, q); };
  auto central = [&](double h) { return (p(a + h) - p(a - h)) / (2.0 * h); };
  const double dq = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  const double f = d.density(eq.threshold);
  report.win_prob_at_equilibrium = p(a);
  report.fd_derivative = dq * f;
  report.closed_form_derivative = n * f * (m - 1.0) /
                                  ((1.0 - a) * m * (static_cast<double>(n) * m - 1.0));
  report.relative_error =
      std::fabs(report.fd_derivative - report.closed_form_derivative) /
      std::fabs(report.closed_form_derivative);
  report.marginal_benefit = params.meta_prize * report.fd_derivative;
  report.marginal_cost = n * params.cost * f / ((1.0 - a) * (1.0 - a));
  report.foc_relative_gap =
      std::fabs(report.marginal_benefit - report.marginal_cost) /
      report.marginal_cost;
  return report;
}

DesignerComparison compare_designer_individual(const DesignerParams& params,
                                               const Distribution& d) {
  const DesignerEquilibrium designer = solve_designer(params, d);
  const ContestParams individual{params.n_designers * params.team_size,
                                 params.cost, params.meta_prize};
  const SymmetricEquilibrium sym = solve_symmetric(individual, d);
  DesignerComparison out;
  out.designer_quantile = designer.threshold_quantile;
  out.individual_quantile = 1.0 - sym.acceptance_prob;
  out.designer_lower = out.designer_quantile < out.individual_quantile;
  return out;
}

std::vector<LargeMarketRow> large_market_limit(int team_size, double cost,
                                               double per_designer_prize,
                                               int m_min, int m_max) {
  if (team_size < 1 || !(cost > 0.0) || !(per_designer_prize > 0.0) ||
      m_min < 2 || m_max < m_min) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "large_market_limit needs N >= 1, c > 0, omega > 0 and "
                       "2 <= m_min <= m_max");
  }
  const double n = team_size;
  const double limit = n * cost / per_designer_prize;
  std::vector<LargeMarketRow> rows;
  for (int m = m_min; m <= m_max; ++m) {
    LargeMarketRow row;
    row.n_designers = m;
    row.accept_prob =
        cost * (n * m - 1.0) / (per_designer_prize * (m - 1.0));
    row.limit_gap = std::fabs(row.accept_prob - limit);
    row.viable = row.accept_prob < 1.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace searchcontest
