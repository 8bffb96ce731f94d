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

#ifndef SEARCHCONTEST_EQUILIBRIUM_H_
#define SEARCHCONTEST_EQUILIBRIUM_H_

// Infinite-horizon, no-recall search contests: N players pay `cost` per draw
// from F and the highest accepted value wins. All solvers work in quantile
// space u = F(x) and map back through the distribution only at the end.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "searchcontest/distribution.h"

namespace searchcontest {

struct ContestParams {
  int n_players = 2;
  double cost = 0.0;   // per draw
  double prize = 1.0;  // winner's prize

  // Throws invalid-parameter unless n_players >= 2, cost > 0, prize > 0.
  void validate() const;
  // Strict viability: n_players * cost < prize.
  bool viable() const { return n_players * cost < prize; }
};

struct SymmetricEquilibrium {
  double threshold = 0.0;
  double acceptance_prob = 0.0;  // 1 - F(threshold) = N c / W
  double expected_draws = 0.0;
  double expected_cost_per_player = 0.0;
  double dissipation_ratio = 0.0;
  double player_value = 0.0;
};

// Unique symmetric equilibrium. At the boundary N c = W every player draws
// once and accepts (threshold = support lower bound). Throws not-viable
// when N c > W.
SymmetricEquilibrium solve_symmetric(const ContestParams& params,
                                     const Distribution& d);

struct ComparativeStaticsRow {
  ContestParams params;
  std::optional<SymmetricEquilibrium> equilibrium;
  std::string error;  // set when the point is not viable or invalid
  // N * expected_cost_per_player; equals the prize at every viable point.
  double total_expected_cost = 0.0;
};

// Solves every grid point independently. Non-viable points are flagged in
// their row rather than aborting the sweep.
std::vector<ComparativeStaticsRow> comparative_statics(
    std::span<const ContestParams> grid, const Distribution& d);

// Rank-order prizes W_1 >= W_2 >= ... >= W_N >= 0.
class PrizeSchedule {
 public:
  explicit PrizeSchedule(std::vector<double> prizes);

  static PrizeSchedule winner_take_all(int n_players, double prize);
  // W_k = a (N + 1 - k).
  static PrizeSchedule linear(int n_players, double increment);

  const std::vector<double>& prizes() const noexcept { return prizes_; }
  std::size_t size() const noexcept { return prizes_.size(); }
  double operator[](std::size_t rank) const { return prizes_[rank]; }
  double mean() const noexcept { return total_ / prizes_.size(); }
  double last() const noexcept { return prizes_.back(); }
  double total() const noexcept { return total_; }

 private:
  std::vector<double> prizes_;
  double total_ = 0.0;
};

struct MultiPrizeEquilibrium {
  double threshold = 0.0;
  double acceptance_prob = 0.0;  // c / (mean - last)
  double player_value = 0.0;     // consolation prize W_N
  double total_expected_cost = 0.0;
  double dissipation_ratio = 0.0;  // 1 - W_N / mean
};

// Throws no-search-incentive when all prizes are equal and not-viable when
// cost exceeds mean - last.
MultiPrizeEquilibrium solve_multiprize(int n_players, double cost,
                                       const PrizeSchedule& prizes,
                                       const Distribution& d);

// One high-threshold player earning rents against N - 1 low-threshold
// players who earn zero.
struct AsymmetricEquilibrium {
  double low_threshold = 0.0;
  double high_threshold = 0.0;
  double high_player_value = 0.0;
  double low_quantile = 0.0;   // F(low_threshold)
  double high_quantile = 0.0;  // F(high_threshold)
  double symmetric_quantile = 0.0;
  // Residuals of the two pinning conditions at the returned point.
  double high_residual = 0.0;
  double low_residual = 0.0;
};

// Pinning conditions, with G_L, G_H the truncated CDFs at the two
// thresholds:
//   high player:  V_H = W G_L(l_H)^{N-1} and
//                 V_H (1 - F(l_H)) = -c + int_{l_H} W G_L^{N-1} dF
//   low players:  0 = -c + int_{l_H} W G_L^{N-2} G_H dF
// solved by nested bisection (outer on F(l_H), inner on F(l_L)).
// Throws none-exists for N = 2 and numeric-failure when no non-trivial
// bracket is found.
AsymmetricEquilibrium solve_asymmetric(const ContestParams& params,
                                       const Distribution& d);

namespace detail {
// Quantile-space pieces of the asymmetric system, exposed for tests.
double asymmetric_low_condition(int n, double cost_ratio, double low_q,
                                double high_q);
double asymmetric_high_condition(int n, double cost_ratio, double low_q,
                                 double high_q);
}  // namespace detail

}  // namespace searchcontest

#endif  // SEARCHCONTEST_EQUILIBRIUM_H_
