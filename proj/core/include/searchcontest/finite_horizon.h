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

#ifndef SEARCHCONTEST_FINITE_HORIZON_H_
#define SEARCHCONTEST_FINITE_HORIZON_H_

// Symmetric equilibria of the k-draw contest without recall: a player who
// rejects draws 1..k-1 must accept draw k. Everything here lives in quantile
// space and never touches a Distribution; the x-space threshold for a law F
// is F.quantile(a_j).

#include <optional>
#include <string>
#include <vector>

namespace searchcontest {

struct FiniteHorizonParams {
  int n_players = 2;
  double cost_ratio = 0.0;  // c / W
  int n_draws = 2;          // k

  void validate() const;
};

// CDF of an opponent's final value at the u-th quantile of F when every
// opponent plays round quantiles a_1..a_{k-1}:
//   h(u) = sum_j (prod_{i<j} a_i) max(u - a_j, 0) + (prod_{i<k} a_i) u.
// Piecewise linear with breakpoints at the a_j; h(0) = 0 and h(1) = 1.
class OpponentFinalCdf {
 public:
  explicit OpponentFinalCdf(std::vector<double> round_quantiles);

  double operator()(double u) const;
  // Smallest u with h(u) >= y, for y in [0, 1].
  double inverse(double y) const;
  // Exact integral of h(u)^power over [lower, upper].
  double integrate_power(int power, double lower = 0.0,
                         double upper = 1.0) const;

  const std::vector<double>& round_quantiles() const noexcept {
    return round_quantiles_;
  }

 private:
  std::vector<double> round_quantiles_;
  std::vector<double> knots_;   // sorted breakpoints including 0 and 1
  std::vector<double> values_;  // h at the knots
};

struct FiniteHorizonEquilibrium {
  std::vector<double> round_quantiles;  // a_1..a_{k-1}
  bool exists = false;

  // Diagnostics.
  std::string method;  // closed-form | best-response | newton | nested-scan
  int iterations = 0;
  double max_residual = 0.0;  // sup_j |h(a_j)^{N-1} - V_{j+1}/W|
  std::vector<double> continuation_values;  // V_2/W .. V_k/W
  double ex_ante_value = 0.0;               // V_1/W
  // True when damped best response (damping 0.5) is attracted to the point.
  bool br_stable = false;
  // Other fixed points reached from the multi-start grid, if any.
  std::vector<std::vector<double>> alternative_solutions;
  // Sup-norm of BR(a) - a over the last best-response iterations.
  std::vector<double> trace;
};

// Closed form for k = 2: root in (0, 1) of
//   c/W = (1 + a^{2N-1}) / (N (1 + a)) - a^{2N-2}.
// Non-existence is reported through `exists`, never thrown.
FiniteHorizonEquilibrium solve_two_draw(int n_players, double cost_ratio);

// General k by backward induction. Stage 1 is damped best response
// started from the k = 2 solution; on non-convergence it falls back, for
// k <= 4, to a nested scan-and-bisect over the indifference residuals and
// then to multi-start Newton on the same residuals. Multi-start Newton also
// runs after success to collect alternative fixed points. Throws
// numeric-failure when k > 4 and no stage converges (existence is then
// undecided).
FiniteHorizonEquilibrium solve_k_draw(const FiniteHorizonParams& params);

struct ThresholdProfileRow {
  int n_players = 0;
  FiniteHorizonEquilibrium equilibrium;
};

struct ThresholdProfile {
  int n_draws = 2;
  double cost_ratio = 0.0;
  std::vector<ThresholdProfileRow> rows;
  std::optional<int> peak_n;              // argmax of a_1 over existing rows
  std::optional<int> existence_frontier;  // first N without an equilibrium
};

ThresholdProfile threshold_profile(int n_draws, double cost_ratio, int n_min,
                                   int n_max);

// Right-hand side of the k = 2 closed form.
double two_draw_cost_ratio(int n_players, double a);

// Player's optimal round quantiles against opponents playing `opponent`.
// Also returns continuation values V_{j+1}/W and the ex-ante value V_1/W.
struct BestResponse {
  std::vector<double> round_quantiles;
  std::vector<double> continuation_values;
  double ex_ante_value = 0.0;
};
BestResponse best_response(const std::vector<double>& opponent, int n_players,
                           double cost_ratio);

// h(a_j)^{N-1} - max(V_{j+1}/W, 0) for every round j.
std::vector<double> indifference_residuals(const std::vector<double>& a,
                                           int n_players, double cost_ratio);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_FINITE_HORIZON_H_
