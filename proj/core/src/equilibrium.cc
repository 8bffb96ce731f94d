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

#include "searchcontest/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "searchcontest/error.h"
#include "searchcontest/numerics.h"

namespace searchcontest {

void ContestParams::validate() const {
  if (n_players < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_players must be >= 2");
  }
  if (!(std::isfinite(cost) && cost > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be > 0");
  }
  if (!(std::isfinite(prize) && prize > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "prize must be > 0");
  }
}

SymmetricEquilibrium solve_symmetric(const ContestParams& params,
                                     const Distribution& d) {
  params.validate();
  const double p = params.n_players * params.cost / params.prize;
  if (p > 1.0) {
    throw ContestError(ErrorKind::kNotViable,
                       "not viable: N*c exceeds the prize, rational players "
                       "would not participate");
  }
  SymmetricEquilibrium eq;
  eq.acceptance_prob = p;
  eq.threshold = d.upper_quantile(p);
  eq.expected_draws = 1.0 / p;
  eq.expected_cost_per_player = params.cost / p;
  eq.dissipation_ratio =
      params.n_players * eq.expected_cost_per_player / params.prize;
  eq.player_value = 0.0;
  return eq;
}

std::vector<ComparativeStaticsRow> comparative_statics(
    std::span<const ContestParams> grid, const Distribution& d) {
  std::vector<ComparativeStaticsRow> rows;
  rows.reserve(grid.size());
  for (const ContestParams& p : grid) {
    ComparativeStaticsRow row;
    row.params = p;
    try {
      row.equilibrium = solve_symmetric(p, d);
      row.total_expected_cost =
          p.n_players * row.equilibrium->expected_cost_per_player;
    } catch (const ContestError& e) {
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PrizeSchedule::PrizeSchedule(std::vector<double> prizes)
    : prizes_(std::move(prizes)) {
  if (prizes_.empty()) {
    throw ContestError(ErrorKind::kInvalidParameter, "empty prize schedule");
  }
  for (std::size_t i = 0; i < prizes_.size(); ++i) {
    if (!(std::isfinite(prizes_[i]) && prizes_[i] >= 0.0)) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "prizes must be finite and nonnegative");
    }
    if (i > 0 && prizes_[i] > prizes_[i - 1]) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "prizes must be sorted non-increasing");
    }
  }
  total_ = std::accumulate(prizes_.begin(), prizes_.end(), 0.0);
}

PrizeSchedule PrizeSchedule::winner_take_all(int n_players, double prize) {
  if (n_players < 1) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_players must be >= 1");
  }
  std::vector<double> w(static_cast<std::size_t>(n_players), 0.0);
  w[0] = prize;
  return PrizeSchedule(std::move(w));
}

PrizeSchedule PrizeSchedule::linear(int n_players, double increment) {
  if (n_players < 1 || !(increment > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "linear prizes need n >= 1 and increment > 0");
  }
  std::vector<double> w;
  for (int k = 1; k <= n_players; ++k) w.push_back(increment * (n_players + 1 - k));
  return PrizeSchedule(std::move(w));
}

MultiPrizeEquilibrium solve_multiprize(int n_players, double cost,
                                       const PrizeSchedule& prizes,
                                       const Distribution& d) {
  if (n_players < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_players must be >= 2");
  }
  if (prizes.size() != static_cast<std::size_t>(n_players)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "prize schedule length must equal n_players");
  }
  if (!(std::isfinite(cost) && cost > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be > 0");
  }
  const double gap = prizes.mean() - prizes.last();
  if (!(gap > 0.0)) {
    throw ContestError(ErrorKind::kNoSearchIncentive,
                       "all prizes are equal: no incentive to search");
  }
  const double p = cost / gap;
  if (p > 1.0) {
    throw ContestError(ErrorKind::kNotViable,
                       "not viable: cost exceeds mean prize minus consolation");
  }
  MultiPrizeEquilibrium eq;
  eq.acceptance_prob = p;
  eq.threshold = d.upper_quantile(p);
  eq.player_value = prizes.last();
  eq.total_expected_cost = n_players * cost / p;
  eq.dissipation_ratio = 1.0 - prizes.last() / prizes.mean();
  return eq;
}

namespace detail {

double asymmetric_low_condition(int n, double cost_ratio, double low_q,
                                double high_q) {
  const double low_mass = 1.0 - low_q;
  const double high_mass = 1.0 - high_q;
  // Integrate in w = v - F(l_H) so G_H = w / (1 - F(l_H)) carries no
  // cancellation when the high threshold sits close to the top.
  const double gap = high_q - low_q;
  auto integrand = [&](double w) {
    return std::pow((w + gap) / low_mass, n - 2) * (w / high_mass);
  };
  return numerics::integrate(integrand, 0.0, high_mass) - cost_ratio;
}

double asymmetric_high_condition(int n, double cost_ratio, double low_q,
                                 double high_q) {
  const double low_mass = 1.0 - low_q;
  const double win_at_threshold = (high_q - low_q) / low_mass;
  const double value = std::pow(win_at_threshold, n - 1);
  const double gap = high_q - low_q;
  auto integrand = [&](double w) {
    return std::pow((w + gap) / low_mass, n - 1);
  };
  const double stop_gain = numerics::integrate(integrand, 0.0, 1.0 - high_q);
  return value * (1.0 - high_q) - (stop_gain - cost_ratio);
}

}  // namespace detail

namespace {

constexpr double kInnerTol = 1e-14;
constexpr double kOuterTol = 1e-12;
constexpr int kOuterScan = 256;

// F(l_L) solving the low-player zero-profit condition for a given F(l_H),
// or nullopt when even l_L = support lower bound cannot cover the cost.
std::optional<double> low_quantile_for(int n, double cost_ratio,
                                       double high_q) {
  auto f = [&](double low_q) {
    return detail::asymmetric_low_condition(n, cost_ratio, low_q, high_q);
  };
  const double at_zero = f(0.0);
  if (at_zero < 0.0) return std::nullopt;
  if (at_zero == 0.0) return 0.0;
  return numerics::bisect(f, 0.0, high_q, kInnerTol);
}

}  // namespace

AsymmetricEquilibrium solve_asymmetric(const ContestParams& params,
                                       const Distribution& d) {
  params.validate();
  const int n = params.n_players;
  if (n == 2) {
    throw ContestError(ErrorKind::kNoneExists,
                       "no asymmetric equilibria exist with two players");
  }
  if (!params.viable()) {
    throw ContestError(ErrorKind::kNotViable,
                       "not viable: N*c must be below the prize");
  }
  const double cost_ratio = params.cost / params.prize;
  const double sym_q = 1.0 - n * cost_ratio;

  // Largest F(l_H) for which a low threshold can still break even.
  auto low_at_zero = [&](double high_q) {
    return detail::asymmetric_low_condition(n, cost_ratio, 0.0, high_q);
  };
  double high_max = 1.0 - 1e-12;
  if (low_at_zero(high_max) < 0.0) {
    high_max = numerics::bisect(low_at_zero, sym_q, high_max, kInnerTol);
  }

  auto outer = [&](double high_q) -> double {
    const auto low_q = low_quantile_for(n, cost_ratio, high_q);
    if (!low_q) return std::numeric_limits<double>::quiet_NaN();
    return detail::asymmetric_high_condition(n, cost_ratio, *low_q, high_q);
  };

  // The symmetric point F(l_H) = F(l_L) = sym_q is a trivial root of the
  // system; scan strictly inside (sym_q, high_max] for the first
  // non-trivial sign change.
  std::vector<double> grid;
  const double span = high_max - sym_q;
  for (int i = 1; i <= kOuterScan; ++i) {
    grid.push_back(sym_q + span * static_cast<double>(i) / kOuterScan);
  }
  const auto brackets = numerics::sign_change_brackets(outer, grid);
  if (brackets.empty()) {
    std::ostringstream os;
    os << "asymmetric solver found no non-trivial bracket for F(l_H) in ("
       << sym_q << ", " << high_max << "] over " << kOuterScan
       << " scan points";
    throw ContestError(ErrorKind::kNumericFailure, os.str());
  }
  const auto [lo, hi] = brackets.front();
  const double high_q = lo == hi ? lo : numerics::bisect(outer, lo, hi, kOuterTol);
  const auto low_q = low_quantile_for(n, cost_ratio, high_q);
  if (!low_q) {
    throw ContestError(ErrorKind::kNumericFailure,
                       "inner bisection lost its bracket at the outer root");
  }

  AsymmetricEquilibrium eq;
  eq.low_quantile = *low_q;
  eq.high_quantile = high_q;
  eq.symmetric_quantile = sym_q;
  eq.low_threshold = d.quantile(*low_q);
  eq.high_threshold = d.upper_quantile(1.0 - high_q);
  eq.high_player_value =
      params.prize * std::pow((high_q - *low_q) / (1.0 - *low_q), n - 1);
  eq.high_residual =
      detail::asymmetric_high_condition(n, cost_ratio, *low_q, high_q);
  eq.low_residual =
      detail::asymmetric_low_condition(n, cost_ratio, *low_q, high_q);
  if (!(eq.low_quantile < sym_q && sym_q < eq.high_quantile &&
        eq.high_player_value > 0.0)) {
    throw ContestError(ErrorKind::kNumericFailure,
                       "asymmetric solution violates l_L < l_sym < l_H");
  }
  return eq;
}

}  // namespace searchcontest
