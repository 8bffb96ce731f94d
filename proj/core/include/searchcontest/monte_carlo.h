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

#ifndef SEARCHCONTEST_MONTE_CARLO_H_
#define SEARCHCONTEST_MONTE_CARLO_H_

// Seeded Monte Carlo for search contests. Every uniform variate is a pure
// function of (seed, replication, player, draw, stream), and replications
// are reduced in fixed-size chunks in chunk order, so reports are
// bit-identical for any thread count.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "searchcontest/distribution.h"
#include "searchcontest/equilibrium.h"
#include "searchcontest/finite_horizon.h"
#include "searchcontest/hierarchy.h"

namespace searchcontest {

// Philox4x32-10 (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

// Substream tags; callers needing independent runs can add offsets.
enum Stream : std::uint32_t {
  kDrawStream = 0,
  kTieStream = 1,
  kRecallStream = 2,
  kDistributionStreamBase = 16,
};

// 64 random bits for one (replication, player, draw) cell of a stream.
std::uint64_t random_bits(std::uint64_t seed, std::uint32_t replication,
                          std::uint32_t player, std::uint32_t draw,
                          std::uint32_t stream);

// Either a stationary threshold (accept the first draw >= threshold) or a
// k-draw vector of round thresholds with forced acceptance at draw k. All
// thresholds are in x-space.
struct Strategy {
  enum class Kind { kThreshold, kFiniteHorizon };
  Kind kind = Kind::kThreshold;
  std::vector<double> thresholds;

  static Strategy threshold(double x);
  static Strategy finite_horizon(std::vector<double> round_thresholds);
  // Maps round quantiles a_j to x-space thresholds F^{-1}(a_j).
  static Strategy from_quantiles(const std::vector<double>& round_quantiles,
                                 const Distribution& d);

  int n_draws() const {  // 0 for unbounded search
    return kind == Kind::kThreshold ? 0 : static_cast<int>(thresholds.size()) + 1;
  }
};
using StrategyProfile = std::vector<Strategy>;

struct SimulationConfig {
  std::int64_t replications = 100000;
  std::uint64_t seed = 0;
  // Infinite-horizon safety cap; 0 means ceil(40 / acceptance_prob).
  std::int64_t max_draws_cap = 0;
  // 0 means hardware concurrency. Never affects results.
  int threads = 0;
  std::uint32_t stream_offset = 0;  // shifts every stream tag
};

// Cost per draw, rank-order prizes and whether players keep their best
// draw (recall) instead of the last one when search ends.
struct ContestSpec {
  double cost = 0.0;
  PrizeSchedule prizes = PrizeSchedule::winner_take_all(2, 1.0);
  bool recall = false;
};

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

struct PlayerStats {
  Estimate payoff;
  Estimate cost;
  Estimate draws;
  Estimate win_frequency;
  Estimate acceptance_rate;  // share of draws clearing the round threshold
};

struct SimulationReport {
  std::vector<PlayerStats> players;
  Estimate dissipation_ratio;  // total search cost / total prize money
  Estimate acceptance_rate;    // pooled over players
  Estimate draws_per_player;   // replication mean over players
  Estimate cost_per_player;
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  std::int64_t max_draws_cap = 0;
  std::int64_t capped_runs = 0;
  std::vector<std::string> warnings;
};

SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const ContestSpec& contest,
                                  const Distribution& d,
                                  const SimulationConfig& cfg);
// Winner-take-all contest with the given parameters.
SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const ContestParams& params,
                                  const Distribution& d,
                                  const SimulationConfig& cfg);
// Finite-horizon contest with prize 1 and cost equal to the cost ratio.
SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const FiniteHorizonParams& params,
                                  const Distribution& d,
                                  const SimulationConfig& cfg);

struct DeviationPoint {
  Strategy strategy;
  Estimate payoff;
  Estimate gain;  // paired payoff difference against the baseline
  bool flagged = false;
};

struct DeviationReport {
  int deviator = 0;
  Estimate baseline_payoff;
  std::vector<DeviationPoint> points;
  bool any_flagged = false;
  std::optional<std::size_t> best_point;  // largest estimated gain
};

// Replays each grid strategy for `deviator` against the profile's other
// players on common random numbers; a point is flagged when its paired
// gain exceeds 3 standard errors.
DeviationReport deviation_scan(const StrategyProfile& profile, int deviator,
                               const std::vector<Strategy>& grid,
                               const ContestSpec& contest,
                               const Distribution& d,
                               const SimulationConfig& cfg);

// Threshold strategies at quantiles i / (points + 1), i = 1..points.
std::vector<Strategy> threshold_quantile_grid(const Distribution& d,
                                              int points);
// Finite-horizon variants of `base` with round 1 moved to quantile
// i / (points + 1).
std::vector<Strategy> round_one_grid(const std::vector<double>& base_quantiles,
                                     const Distribution& d, int points);

struct DistributionFreeEntry {
  std::string label;
  SimulationReport report;
};

struct PairwiseGap {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string quantity;
  double gap = 0.0;
  double joint_se = 0.0;
  bool within = true;
};

struct DistributionFreeReport {
  std::vector<DistributionFreeEntry> entries;
  std::vector<PairwiseGap> gaps;
  bool pass = true;
};

// Symmetric-equilibrium simulation under each law on its own stream
// family; compares acceptance rate, draws, cost and dissipation pairwise.
DistributionFreeReport distribution_free_check(
    const ContestParams& params, const std::vector<Distribution>& laws,
    const SimulationConfig& cfg);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Asymptotic 1% critical value 1.628 sqrt((n + m) / (n m)).
double ks_critical_1pct(std::size_t n, std::size_t m);

struct RecallReport {
  double ks = 0.0;
  double critical_1pct = 0.0;
  bool pass = false;
  std::size_t samples = 0;
  double mean_final_no_recall = 0.0;
  double mean_final_recall = 0.0;
};

// Final values of player 0 at the symmetric threshold, without recall on
// the draw stream and with recall on an independent stream.
RecallReport recall_irrelevance_check(const ContestParams& params,
                                      const Distribution& d,
                                      const SimulationConfig& cfg);

// Final accepted values of one player per replication.
std::vector<double> simulate_final_values(const StrategyProfile& profile,
                                          const ContestSpec& contest,
                                          const Distribution& d,
                                          const SimulationConfig& cfg,
                                          int player);

struct DesignerSimulationReport {
  Estimate dissipation_ratio;  // total worker search cost / meta prize
  std::vector<Estimate> designer_payoff;
  std::vector<Estimate> win_frequency;
  Estimate worker_payoff;  // pooled over all workers
  std::int64_t replications = 0;
  std::uint64_t seed = 0;
  std::int64_t max_draws_cap = 0;
  std::int64_t capped_runs = 0;
};

// Each designer m pays its best worker N c / (1 - F(b_m)); workers in team
// m search with threshold b_m. `quantiles` gives F(b_m) per designer.
DesignerSimulationReport simulate_designer(const DesignerParams& params,
                                           const std::vector<double>& quantiles,
                                           const Distribution& d,
                                           const SimulationConfig& cfg);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_MONTE_CARLO_H_
