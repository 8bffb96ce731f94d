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

#include "searchcontest/monte_carlo.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "searchcontest/error.h"

namespace searchcontest {

// ---------------------------------------------------------------------------
// Random numbers.

Philox4x32::Counter Philox4x32::generate(Counter c, Key k) {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

std::uint64_t random_bits(std::uint64_t seed, std::uint32_t replication,
                          std::uint32_t player, std::uint32_t draw,
                          std::uint32_t stream) {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::generate({draw, player, replication, stream}, key);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// ---------------------------------------------------------------------------
// Strategies.

Strategy Strategy::threshold(double x) {
  if (std::isnan(x)) {
    throw ContestError(ErrorKind::kInvalidParameter, "threshold is NaN");
  }
  return Strategy{Kind::kThreshold, {x}};
}

Strategy Strategy::finite_horizon(std::vector<double> round_thresholds) {
  if (round_thresholds.empty()) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "a k-draw strategy needs k - 1 >= 1 thresholds");
  }
  return Strategy{Kind::kFiniteHorizon, std::move(round_thresholds)};
}

Strategy Strategy::from_quantiles(const std::vector<double>& round_quantiles,
                                  const Distribution& d) {
  std::vector<double> x;
  x.reserve(round_quantiles.size());
  for (double a : round_quantiles) x.push_back(d.quantile(a));
  return finite_horizon(std::move(x));
}

namespace {

constexpr std::int64_t kChunk = 2048;
constexpr double kCapTail = 1e-12;

struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }

  Estimate estimate() const {
    Estimate e;
    e.mean = mean;
    e.se = n > 1.0 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    return e;
  }
};

Estimate proportion(double hits, double trials) {
  Estimate e;
  if (trials <= 0.0) return e;
  e.mean = hits / trials;
  e.se = std::sqrt(e.mean * (1.0 - e.mean) / trials);
  return e;
}

void validate_config(const SimulationConfig& cfg) {
  if (cfg.replications < 1 ||
      cfg.replications > static_cast<std::int64_t>(
                             std::numeric_limits<std::uint32_t>::max())) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "replications must lie in [1, 2^32 - 1]");
  }
  if (cfg.max_draws_cap < 0) {
    throw ContestError(ErrorKind::kInvalidParameter, "max_draws_cap must be >= 0");
  }
}

// Fixed chunk boundaries; each chunk reduced by one worker; chunks are
// returned in order so the caller's merge is schedule-independent.
template <class Acc, class MakeAcc, class Body>
std::vector<Acc> run_chunks(std::int64_t reps, int threads, MakeAcc make,
                            Body body) {
  const std::int64_t n_chunks = (reps + kChunk - 1) / kChunk;
  std::vector<Acc> results;
  results.reserve(static_cast<std::size_t>(n_chunks));
  for (std::int64_t i = 0; i < n_chunks; ++i) results.push_back(make());
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t chunk = next++; chunk < n_chunks; chunk = next++) {
      const std::int64_t begin = chunk * kChunk;
      const std::int64_t end = std::min(reps, begin + kChunk);
      Acc& acc = results[static_cast<std::size_t>(chunk)];
      for (std::int64_t rep = begin; rep < end; ++rep) {
        body(static_cast<std::uint32_t>(rep), acc);
      }
    }
  };
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, n_chunks));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

struct Play {
  double value = 0.0;
  int draws = 0;
  int cleared = 0;  // draws at or above the round threshold
  bool capped = false;
};

struct Player {
  const Strategy* strategy;
  const Distribution* d;
  std::uint64_t seed;
  std::uint32_t stream;
  std::int64_t cap;
  bool recall;

  Play play(std::uint32_t rep, std::uint32_t who) const {
    Play out;
    double best = -std::numeric_limits<double>::infinity();
    const bool finite = strategy->kind == Strategy::Kind::kFiniteHorizon;
    const std::int64_t limit = finite ? strategy->n_draws() : cap;
    double x = 0.0;
    for (std::int64_t j = 0; j < limit; ++j) {
      x = d->transform(bits_to_open_unit(random_bits(
          seed, rep, who, static_cast<std::uint32_t>(j), stream)));
      ++out.draws;
      best = std::max(best, x);
      const double t = finite ? (j + 1 < limit ? strategy->thresholds[j]
                                               : -std::numeric_limits<double>::infinity())
                              : strategy->thresholds[0];
      if (x >= t) {
        if (!finite || j + 1 < limit) ++out.cleared;
        out.value = recall ? best : x;
        return out;
      }
    }
    out.capped = true;
    out.value = recall ? best : x;
    return out;
  }
};

double tie_key(std::uint64_t seed, std::uint32_t rep, std::uint32_t who,
               std::uint32_t stream) {
  return bits_to_open_unit(random_bits(seed, rep, who, 0, stream));
}

// Rank order (best first) with uniformly random tie-breaking.
void rank_players(const std::vector<double>& values, std::uint64_t seed,
                  std::uint32_t rep, std::uint32_t stream,
                  std::vector<std::size_t>& order) {
  order.resize(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return tie_key(seed, rep, static_cast<std::uint32_t>(a), stream) >
           tie_key(seed, rep, static_cast<std::uint32_t>(b), stream);
  });
}

double clearing_prob(const Strategy& s, const Distribution& d) {
  if (s.kind != Strategy::Kind::kThreshold) return 1.0;
  const double t = s.thresholds[0];
  return t <= d.support_lower() ? 1.0 : d.survival(t);
}

std::int64_t resolve_cap(const std::vector<const Strategy*>& strategies,
                         const Distribution& d, const SimulationConfig& cfg,
                         std::vector<std::string>* warnings) {
  double p = 1.0;
  for (const Strategy* s : strategies) p = std::min(p, clearing_prob(*s, d));
  if (!(p > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "a threshold leaves no mass to accept");
  }
  std::int64_t cap = cfg.max_draws_cap;
  if (cap == 0) {
    const double auto_cap = std::ceil(40.0 / p);
    if (auto_cap > std::numeric_limits<std::uint32_t>::max()) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "acceptance probability too small to simulate");
    }
    cap = static_cast<std::int64_t>(auto_cap);
  } else if (warnings && p < 1.0 &&
             cap * std::log1p(-p) > std::log(kCapTail)) {
    warnings->push_back("max_draws_cap allows truncation probability above 1e-12");
  }
  return std::max<std::int64_t>(cap, 1);
}

void validate_profile(const StrategyProfile& profile, const ContestSpec& contest) {
  if (profile.size() < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "need at least two players");
  }
  if (contest.prizes.size() != profile.size()) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "prize schedule length must equal the number of players");
  }
  if (!(std::isfinite(contest.cost) && contest.cost >= 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter, "cost must be >= 0");
  }
  for (const auto& s : profile) {
    if (s.thresholds.empty()) {
      throw ContestError(ErrorKind::kInvalidParameter, "empty strategy");
    }
  }
}

struct ContestAcc {
  std::vector<Moments> payoff, cost, draws, win;
  std::vector<double> cleared, drawn;
  Moments dissipation, draws_per_player, cost_per_player;
  std::int64_t capped = 0;

  explicit ContestAcc(std::size_t n)
      : payoff(n), cost(n), draws(n), win(n), cleared(n, 0.0), drawn(n, 0.0) {}

  void merge(const ContestAcc& o) {
    for (std::size_t i = 0; i < payoff.size(); ++i) {
      payoff[i].merge(o.payoff[i]);
      cost[i].merge(o.cost[i]);
      draws[i].merge(o.draws[i]);
      win[i].merge(o.win[i]);
      cleared[i] += o.cleared[i];
      drawn[i] += o.drawn[i];
    }
    dissipation.merge(o.dissipation);
    draws_per_player.merge(o.draws_per_player);
    cost_per_player.merge(o.cost_per_player);
    capped += o.capped;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Contest simulation.

SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const ContestSpec& contest,
                                  const Distribution& d,
                                  const SimulationConfig& cfg) {
  validate_config(cfg);
  validate_profile(profile, contest);
  SimulationReport report;
  std::vector<const Strategy*> all;
  for (const auto& s : profile) all.push_back(&s);
  const std::int64_t cap = resolve_cap(all, d, cfg, &report.warnings);
  const std::size_t n = profile.size();
  const double total_prize = contest.prizes.total();
  const std::uint32_t draw_stream = kDrawStream + cfg.stream_offset;
  const std::uint32_t tie_stream = kTieStream + cfg.stream_offset;

  auto chunks = run_chunks<ContestAcc>(
      cfg.replications, cfg.threads, [n] { return ContestAcc(n); },
      [&](std::uint32_t rep, ContestAcc& acc) {
        std::vector<double> values(n);
        std::vector<Play> plays(n);
        for (std::size_t i = 0; i < n; ++i) {
          const Player p{&profile[i], &d, cfg.seed, draw_stream, cap, contest.recall};
          plays[i] = p.play(rep, static_cast<std::uint32_t>(i));
          values[i] = plays[i].value;
        }
        std::vector<std::size_t> order;
        rank_players(values, cfg.seed, rep, tie_stream, order);
        double spent = 0.0;
        double draws = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const std::size_t i = order[r];
          const double c = contest.cost * plays[i].draws;
          acc.payoff[i].add(contest.prizes[r] - c);
          acc.cost[i].add(c);
          acc.draws[i].add(plays[i].draws);
          acc.win[i].add(r == 0 ? 1.0 : 0.0);
          acc.cleared[i] += plays[i].cleared;
          acc.drawn[i] += plays[i].draws;
          if (plays[i].capped) ++acc.capped;
          spent += c;
          draws += plays[i].draws;
        }
        acc.dissipation.add(spent / total_prize);
        acc.draws_per_player.add(draws / n);
        acc.cost_per_player.add(spent / n);
      });
  ContestAcc total(n);
  for (const auto& c : chunks) total.merge(c);

  double cleared = 0.0;
  double drawn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    PlayerStats s;
    s.payoff = total.payoff[i].estimate();
    s.cost = total.cost[i].estimate();
    s.draws = total.draws[i].estimate();
    s.win_frequency = total.win[i].estimate();
    s.acceptance_rate = proportion(total.cleared[i], total.drawn[i]);
    report.players.push_back(s);
    cleared += total.cleared[i];
    drawn += total.drawn[i];
  }
  report.dissipation_ratio = total.dissipation.estimate();
  report.acceptance_rate = proportion(cleared, drawn);
  report.draws_per_player = total.draws_per_player.estimate();
  report.cost_per_player = total.cost_per_player.estimate();
  report.replications = cfg.replications;
  report.seed = cfg.seed;
  report.max_draws_cap = cap;
  report.capped_runs = total.capped;
  if (total.capped > 0) {
    report.warnings.push_back(std::to_string(total.capped) +
                              " player runs hit the draw cap");
  }
  return report;
}

SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const ContestParams& params,
                                  const Distribution& d,
                                  const SimulationConfig& cfg) {
  params.validate();
  return simulate_contest(
      profile,
      ContestSpec{params.cost,
                  PrizeSchedule::winner_take_all(params.n_players, params.prize),
                  false},
      d, cfg);
}

SimulationReport simulate_contest(const StrategyProfile& profile,
                                  const FiniteHorizonParams& params,
                                  const Distribution& d,
                                  const SimulationConfig& cfg) {
  params.validate();
  for (const auto& s : profile) {
    if (s.n_draws() != params.n_draws) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "strategy length does not match n_draws");
    }
  }
  return simulate_contest(
      profile,
      ContestSpec{params.cost_ratio,
                  PrizeSchedule::winner_take_all(params.n_players, 1.0), false},
      d, cfg);
}

// ---------------------------------------------------------------------------
// Deviation scan.

namespace {

struct DeviationAcc {
  Moments baseline;
  std::vector<Moments> payoff, gain;
  explicit DeviationAcc(std::size_t g) : payoff(g), gain(g) {}
  void merge(const DeviationAcc& o) {
    baseline.merge(o.baseline);
    for (std::size_t i = 0; i < payoff.size(); ++i) {
      payoff[i].merge(o.payoff[i]);
      gain[i].merge(o.gain[i]);
    }
  }
};

}  // namespace

DeviationReport deviation_scan(const StrategyProfile& profile, int deviator,
                               const std::vector<Strategy>& grid,
                               const ContestSpec& contest,
                               const Distribution& d,
                               const SimulationConfig& cfg) {
  validate_config(cfg);
  validate_profile(profile, contest);
  if (deviator < 0 || static_cast<std::size_t>(deviator) >= profile.size()) {
    throw ContestError(ErrorKind::kInvalidParameter, "deviator out of range");
  }
  std::vector<const Strategy*> all;
  for (const auto& s : profile) all.push_back(&s);
  for (const auto& s : grid) all.push_back(&s);
  const std::int64_t cap = resolve_cap(all, d, cfg, nullptr);
  const std::size_t n = profile.size();
  const std::size_t dev = static_cast<std::size_t>(deviator);
  const std::uint32_t draw_stream = kDrawStream + cfg.stream_offset;
  const std::uint32_t tie_stream = kTieStream + cfg.stream_offset;

  auto chunks = run_chunks<DeviationAcc>(
      cfg.replications, cfg.threads,
      [&] { return DeviationAcc(grid.size()); },
      [&](std::uint32_t rep, DeviationAcc& acc) {
        std::vector<double> rivals;
        std::vector<double> rival_keys;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == dev) continue;
          const Player p{&profile[i], &d, cfg.seed, draw_stream, cap, contest.recall};
          rivals.push_back(p.play(rep, static_cast<std::uint32_t>(i)).value);
          rival_keys.push_back(
              tie_key(cfg.seed, rep, static_cast<std::uint32_t>(i), tie_stream));
        }
        const double own_key =
            tie_key(cfg.seed, rep, static_cast<std::uint32_t>(dev), tie_stream);
        auto payoff_of = [&](const Strategy& s) {
          const Player p{&s, &d, cfg.seed, draw_stream, cap, contest.recall};
          const Play play = p.play(rep, static_cast<std::uint32_t>(dev));
          std::size_t rank = 0;
          for (std::size_t j = 0; j < rivals.size(); ++j) {
            if (rivals[j] > play.value ||
                (rivals[j] == play.value && rival_keys[j] > own_key)) {
              ++rank;
            }
          }
          return contest.prizes[rank] - contest.cost * play.draws;
        };
        const double base = payoff_of(profile[dev]);
        acc.baseline.add(base);
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const double v = payoff_of(grid[g]);
          acc.payoff[g].add(v);
          acc.gain[g].add(v - base);
        }
      });
  DeviationAcc total(grid.size());
  for (const auto& c : chunks) total.merge(c);

  DeviationReport report;
  report.deviator = deviator;
  report.baseline_payoff = total.baseline.estimate();
  double best_gain = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    DeviationPoint point;
    point.strategy = grid[g];
    point.payoff = total.payoff[g].estimate();
    point.gain = total.gain[g].estimate();
    point.flagged = point.gain.mean > 3.0 * point.gain.se;
    report.any_flagged = report.any_flagged || point.flagged;
    if (point.gain.mean > best_gain) {
      best_gain = point.gain.mean;
      report.best_point = g;
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

std::vector<Strategy> threshold_quantile_grid(const Distribution& d, int points) {
  std::vector<Strategy> grid;
  for (int i = 1; i <= points; ++i) {
    grid.push_back(Strategy::threshold(
        d.quantile(static_cast<double>(i) / (points + 1))));
  }
  return grid;
}

std::vector<Strategy> round_one_grid(const std::vector<double>& base_quantiles,
                                     const Distribution& d, int points) {
  std::vector<Strategy> grid;
  for (int i = 1; i <= points; ++i) {
    std::vector<double> q = base_quantiles;
    q.front() = static_cast<double>(i) / (points + 1);
    grid.push_back(Strategy::from_quantiles(q, d));
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Distribution-freeness and recall.

DistributionFreeReport distribution_free_check(
    const ContestParams& params, const std::vector<Distribution>& laws,
    const SimulationConfig& cfg) {
  if (laws.size() < 2) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "need at least two distributions");
  }
  DistributionFreeReport report;
  for (std::size_t i = 0; i < laws.size(); ++i) {
    const SymmetricEquilibrium eq = solve_symmetric(params, laws[i]);
    const StrategyProfile profile(static_cast<std::size_t>(params.n_players),
                                  Strategy::threshold(eq.threshold));
    SimulationConfig run = cfg;
    run.stream_offset =
        cfg.stream_offset + kDistributionStreamBase * static_cast<std::uint32_t>(i + 1);
    report.entries.push_back(
        {laws[i].label(), simulate_contest(profile, params, laws[i], run)});
  }
  auto compare = [&](std::size_t a, std::size_t b, const char* name,
                     Estimate SimulationReport::*field) {
    const Estimate& x = report.entries[a].report.*field;
    const Estimate& y = report.entries[b].report.*field;
    PairwiseGap gap{a, b, name, x.mean - y.mean,
                    std::sqrt(x.se * x.se + y.se * y.se), true};
    gap.within = std::fabs(gap.gap) <= 3.0 * gap.joint_se;
    report.pass = report.pass && gap.within;
    report.gaps.push_back(gap);
  };
  for (std::size_t a = 0; a < laws.size(); ++a) {
    for (std::size_t b = a + 1; b < laws.size(); ++b) {
      compare(a, b, "acceptance_rate", &SimulationReport::acceptance_rate);
      compare(a, b, "draws_per_player", &SimulationReport::draws_per_player);
      compare(a, b, "cost_per_player", &SimulationReport::cost_per_player);
      compare(a, b, "dissipation_ratio", &SimulationReport::dissipation_ratio);
    }
  }
  return report;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw ContestError(ErrorKind::kInvalidParameter, "empty KS sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double stat = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    stat = std::max(stat, std::fabs(i / na - j / nb));
  }
  return stat;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return 1.628 * std::sqrt((dn + dm) / (dn * dm));
}

std::vector<double> simulate_final_values(const StrategyProfile& profile,
                                          const ContestSpec& contest,
                                          const Distribution& d,
                                          const SimulationConfig& cfg,
                                          int player) {
  validate_config(cfg);
  validate_profile(profile, contest);
  if (player < 0 || static_cast<std::size_t>(player) >= profile.size()) {
    throw ContestError(ErrorKind::kInvalidParameter, "player out of range");
  }
  const Strategy& s = profile[static_cast<std::size_t>(player)];
  const std::int64_t cap = resolve_cap({&s}, d, cfg, nullptr);
  std::vector<double> values(static_cast<std::size_t>(cfg.replications));
  const Player p{&s, &d, cfg.seed, kDrawStream + cfg.stream_offset, cap,
                 contest.recall};
  struct Nothing {};
  run_chunks<Nothing>(cfg.replications, cfg.threads, [] { return Nothing{}; },
                      [&](std::uint32_t rep, Nothing&) {
                        values[rep] =
                            p.play(rep, static_cast<std::uint32_t>(player)).value;
                      });
  return values;
}

RecallReport recall_irrelevance_check(const ContestParams& params,
                                      const Distribution& d,
                                      const SimulationConfig& cfg) {
  const SymmetricEquilibrium eq = solve_symmetric(params, d);
  const StrategyProfile profile(static_cast<std::size_t>(params.n_players),
                                Strategy::threshold(eq.threshold));
  ContestSpec contest{params.cost,
                      PrizeSchedule::winner_take_all(params.n_players, params.prize),
                      false};
  const auto no_recall = simulate_final_values(profile, contest, d, cfg, 0);
  contest.recall = true;
  SimulationConfig other = cfg;
  other.stream_offset = cfg.stream_offset + kRecallStream;
  const auto recall = simulate_final_values(profile, contest, d, other, 0);

  RecallReport report;
  report.samples = no_recall.size();
  report.mean_final_no_recall =
      std::accumulate(no_recall.begin(), no_recall.end(), 0.0) / no_recall.size();
  report.mean_final_recall =
      std::accumulate(recall.begin(), recall.end(), 0.0) / recall.size();
  report.ks = ks_statistic(no_recall, recall);
  report.critical_1pct = ks_critical_1pct(no_recall.size(), recall.size());
  report.pass = report.ks < report.critical_1pct;
  return report;
}

// ---------------------------------------------------------------------------
// Designer contests.

namespace {

struct DesignerAcc {
  Moments dissipation, worker;
  std::vector<Moments> payoff, win;
  std::int64_t capped = 0;
  explicit DesignerAcc(std::size_t m) : payoff(m), win(m) {}
  void merge(const DesignerAcc& o) {
    dissipation.merge(o.dissipation);
    worker.merge(o.worker);
    for (std::size_t i = 0; i < payoff.size(); ++i) {
      payoff[i].merge(o.payoff[i]);
      win[i].merge(o.win[i]);
    }
    capped += o.capped;
  }
};

}  // namespace

DesignerSimulationReport simulate_designer(const DesignerParams& params,
                                           const std::vector<double>& quantiles,
                                           const Distribution& d,
                                           const SimulationConfig& cfg) {
  params.validate();
  validate_config(cfg);
  const std::size_t m = static_cast<std::size_t>(params.n_designers);
  const int n = params.team_size;
  if (quantiles.size() != m) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "need one threshold quantile per designer");
  }
  std::vector<Strategy> team_strategy;
  std::vector<double> internal_prize;
  for (double q : quantiles) {
    if (!(q >= 0.0 && q < 1.0)) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "threshold quantiles must lie in [0, 1)");
    }
    team_strategy.push_back(Strategy::threshold(d.quantile(q)));
    internal_prize.push_back(n * params.cost / (1.0 - q));
  }
  std::vector<const Strategy*> all;
  for (const auto& s : team_strategy) all.push_back(&s);
  const std::int64_t cap = resolve_cap(all, d, cfg, nullptr);
  const std::uint32_t draw_stream = kDrawStream + cfg.stream_offset;
  const std::uint32_t tie_stream = kTieStream + cfg.stream_offset;
  // Team-level ties use player ids past the worker range.
  const std::uint32_t team_tie_base = static_cast<std::uint32_t>(m) * n;

  auto chunks = run_chunks<DesignerAcc>(
      cfg.replications, cfg.threads, [m] { return DesignerAcc(m); },
      [&](std::uint32_t rep, DesignerAcc& acc) {
        std::vector<double> team_best(m);
        double spent = 0.0;
        double worker_total = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
          const Player p{&team_strategy[t], &d, cfg.seed, draw_stream, cap, false};
          std::vector<double> values(static_cast<std::size_t>(n));
          for (int w = 0; w < n; ++w) {
            const auto id = static_cast<std::uint32_t>(t * n + w);
            const Play play = p.play(rep, id);
            values[static_cast<std::size_t>(w)] = play.value;
            const double c = params.cost * play.draws;
            spent += c;
            worker_total -= c;
            if (play.capped) ++acc.capped;
          }
          team_best[t] = *std::max_element(values.begin(), values.end());
          worker_total += internal_prize[t];
        }
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t winner = *std::min_element(
            order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
              if (team_best[a] != team_best[b]) return team_best[a] > team_best[b];
              return tie_key(cfg.seed, rep, team_tie_base + static_cast<std::uint32_t>(a),
                             tie_stream) >
                     tie_key(cfg.seed, rep, team_tie_base + static_cast<std::uint32_t>(b),
                             tie_stream);
            });
        for (std::size_t t = 0; t < m; ++t) {
          const double won = t == winner ? 1.0 : 0.0;
          acc.payoff[t].add(params.meta_prize * won - internal_prize[t]);
          acc.win[t].add(won);
        }
        acc.dissipation.add(spent / params.meta_prize);
        acc.worker.add(worker_total / static_cast<double>(m * n));
      });
  DesignerAcc total(m);
  for (const auto& c : chunks) total.merge(c);

  DesignerSimulationReport report;
  report.dissipation_ratio = total.dissipation.estimate();
  for (std::size_t t = 0; t < m; ++t) {
    report.designer_payoff.push_back(total.payoff[t].estimate());
    report.win_frequency.push_back(total.win[t].estimate());
  }
  report.worker_payoff = total.worker.estimate();
  report.replications = cfg.replications;
  report.seed = cfg.seed;
  report.max_draws_cap = cap;
  report.capped_runs = total.capped;
  return report;
}

}  // namespace searchcontest
