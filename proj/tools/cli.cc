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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "searchcontest/distribution.h"
#include "searchcontest/equilibrium.h"
#include "searchcontest/error.h"
#include "searchcontest/finite_horizon.h"
#include "searchcontest/hierarchy.h"
#include "searchcontest/monte_carlo.h"
#include "searchcontest/planner.h"
#include "searchcontest/serialization.h"
#include "searchcontest/version.h"

namespace searchcontest::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SEARCHCONTEST_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("SEARCHCONTEST_SEED is not an unsigned integer");
    }
  }
  return 1;
}

// Options shared by most commands.
struct Common {
  std::string dist = "uniform:0,1";
  std::string dist_file;
  std::string out;  // JSON or CSV destination; stdout when empty
  std::int64_t reps = 100000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;

  Distribution distribution() const {
    try {
      if (!dist_file.empty()) {
        std::ifstream in(dist_file);
        if (!in) throw UsageError("cannot open --dist-file " + dist_file);
        return distribution_from_json(Json::parse(in));
      }
      return parse_distribution_spec(dist);
    } catch (const ContestError& e) {
      throw UsageError(e.what());
    } catch (const Json::exception& e) {
      throw UsageError(std::string("invalid --dist-file JSON: ") + e.what());
    }
  }

  SimulationConfig config() const {
    SimulationConfig cfg;
    cfg.replications = reps;
    cfg.seed = seed_given ? seed : default_seed();
    cfg.threads = threads;
    return cfg;
  }
};

void add_dist(CLI::App* app, Common& c) {
  app->add_option("--dist", c.dist, "Distribution, e.g. uniform:0,1, exponential:1, pareto:2,1")
      ->capture_default_str();
  app->add_option("--dist-file", c.dist_file, "Distribution JSON file");
}

void add_out(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Write the artifact to this path");
}

void add_sim(CLI::App* app, Common& c) {
  app->add_option("--reps", c.reps, "Monte Carlo replications")->capture_default_str();
  app->add_option_function<std::uint64_t>(
      "--seed",
      [&c](const std::uint64_t& s) {
        c.seed = s;
        c.seed_given = true;
      },
      "Seed (default: $SEARCHCONTEST_SEED or 1)");
  app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

struct Emitter {
  std::ostream& out;
  const Common& common;

  // Summary on stdout; JSON document {manifest, result} either after it or
  // in --out.
  void json(RunManifest manifest, const std::string& summary, Json result) {
    if (!common.out.empty()) manifest.outputs.push_back(common.out);
    Json doc = {{"manifest", to_json(manifest)}, {"result", std::move(result)}};
    out << summary;
    const std::string text = dump_json(std::move(doc));
    if (common.out.empty()) {
      out << '\n' << text;
    } else {
      write_file(common.out, text);
    }
  }

  // CSV on stdout or in --out with a sibling PATH.manifest.json.
  void csv(RunManifest manifest, const std::string& text) {
    if (common.out.empty()) {
      out << text;
      return;
    }
    manifest.outputs.push_back(common.out);
    write_file(common.out, text);
    write_file(common.out + ".manifest.json", dump_json(to_json(manifest)));
  }
};

std::string line(const std::string& key, double value) {
  return key + " = " + format_real(value) + "\n";
}

std::string verdict(bool pass, const std::string& what) {
  return std::string(pass ? "PASS " : "FAIL ") + what + "\n";
}

bool within(const Estimate& e, double target, double k = 3.0) {
  return std::fabs(e.mean - target) <= k * e.se;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Numerical lab for sequential-search contests", "searchcontest"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string("searchcontest ") + kVersion +
                           " (format version " + std::to_string(kFormatVersion) + ")");

  Common c;
  int n = 2;
  int m = 2;
  int team = 1;
  int draws = 2;
  int n_min = 2;
  int n_max = 9;
  double cost = 0.1;
  double prize = 1.0;
  double cost_ratio = 0.05;
  double meta_prize = 1.0;
  double step = 1e-5;
  double linear = 0.0;
  std::vector<double> prizes;
  std::vector<double> cost_ratios;
  std::vector<std::string> dists;
  std::string preset = "symmetric";
  int grid_points = 99;
  int m_min = 2;
  int m_max = 20;
  double omega = 1.0;

  std::function<int()> action;
  Emitter emit{out, c};
  auto base_manifest = [&](const std::string& command, Json params,
                           bool with_dist, std::optional<std::uint64_t> seed) {
    RunManifest mf = RunManifest::start(command);
    mf.parameters = std::move(params);
    if (with_dist) mf.distribution = to_json(c.distribution());
    mf.seed = seed;
    return mf;
  };

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve an equilibrium or planner problem");
  solve->require_subcommand(1);

  auto* sym = solve->add_subcommand("symmetric", "Symmetric infinite-horizon equilibrium");
  sym->add_option("--n", n, "Players")->required();
  sym->add_option("--cost", cost, "Cost per draw")->required();
  sym->add_option("--prize", prize, "Prize")->capture_default_str();
  add_dist(sym, c);
  add_out(sym, c);
  sym->callback([&] {
    action = [&] {
      const ContestParams p{n, cost, prize};
      const auto d = c.distribution();
      const auto eq = solve_symmetric(p, d);
      emit.json(base_manifest("solve symmetric", to_json(p), true, std::nullopt),
                line("threshold", eq.threshold) +
                    line("acceptance_prob", eq.acceptance_prob) +
                    line("expected_draws", eq.expected_draws) +
                    line("dissipation_ratio", eq.dissipation_ratio),
                to_json(eq));
      return kOk;
    };
  });

  auto* multi = solve->add_subcommand("multiprize", "Rank-order prize equilibrium");
  multi->add_option("--n", n, "Players")->required();
  multi->add_option("--cost", cost, "Cost per draw")->required();
  auto* prizes_opt = multi->add_option("--prizes", prizes, "Prizes W_1 >= ... >= W_N")
                         ->delimiter(',');
  multi->add_option("--linear", linear, "Linear prizes W_k = a (N + 1 - k)")
      ->excludes(prizes_opt);
  add_dist(multi, c);
  add_out(multi, c);
  multi->callback([&] {
    action = [&] {
      if (prizes.empty() && !(linear > 0.0)) {
        throw UsageError("give --prizes or --linear");
      }
      const PrizeSchedule schedule =
          prizes.empty() ? PrizeSchedule::linear(n, linear) : PrizeSchedule(prizes);
      const auto eq = solve_multiprize(n, cost, schedule, c.distribution());
      Json params = {{"n_players", n}, {"cost", cost}, {"prizes", to_json(schedule)}};
      emit.json(base_manifest("solve multiprize", params, true, std::nullopt),
                line("threshold", eq.threshold) +
                    line("player_value", eq.player_value) +
                    line("dissipation_ratio", eq.dissipation_ratio),
                to_json(eq));
      return kOk;
    };
  });

  auto* asym = solve->add_subcommand("asymmetric", "One high-threshold player");
  asym->add_option("--n", n, "Players (>= 3)")->required();
  asym->add_option("--cost", cost, "Cost per draw")->required();
  asym->add_option("--prize", prize, "Prize")->capture_default_str();
  add_dist(asym, c);
  add_out(asym, c);
  asym->callback([&] {
    action = [&] {
      const ContestParams p{n, cost, prize};
      const auto eq = solve_asymmetric(p, c.distribution());
      emit.json(base_manifest("solve asymmetric", to_json(p), true, std::nullopt),
                line("low_threshold", eq.low_threshold) +
                    line("high_threshold", eq.high_threshold) +
                    line("high_player_value", eq.high_player_value),
                to_json(eq));
      return kOk;
    };
  });

  auto* fin = solve->add_subcommand("finite", "k-draw equilibrium (quantiles)");
  fin->add_option("--n", n, "Players")->required();
  fin->add_option("--cost-ratio", cost_ratio, "c / W")->required();
  fin->add_option("--draws", draws, "Draws k")->capture_default_str();
  add_dist(fin, c);
  add_out(fin, c);
  fin->callback([&] {
    action = [&] {
      const FiniteHorizonParams p{n, cost_ratio, draws};
      const auto eq = draws == 2 ? solve_two_draw(n, cost_ratio) : solve_k_draw(p);
      Json result = to_json(eq);
      std::string summary;
      if (eq.exists) {
        const auto d = c.distribution();
        std::vector<double> x;
        for (double a : eq.round_quantiles) x.push_back(d.quantile(a));
        result["thresholds"] = x;
        for (std::size_t j = 0; j < eq.round_quantiles.size(); ++j) {
          summary += line("a" + std::to_string(j + 1), eq.round_quantiles[j]);
        }
      } else {
        summary = "no interior equilibrium\n";
      }
      emit.json(base_manifest("solve finite", to_json(p), true, std::nullopt),
                summary, result);
      return eq.exists ? kOk : kNoSolution;
    };
  });

  auto* des = solve->add_subcommand("designer", "Designer competition");
  des->add_option("--m", m, "Designers")->required();
  des->add_option("--team", team, "Workers per designer")->required();
  des->add_option("--cost", cost, "Cost per worker draw")->required();
  des->add_option("--meta-prize", meta_prize, "Meta prize")->capture_default_str();
  add_dist(des, c);
  add_out(des, c);
  des->callback([&] {
    action = [&] {
      const DesignerParams p{m, team, cost, meta_prize};
      const auto d = c.distribution();
      const auto eq = solve_designer(p, d);
      Json result = to_json(eq);
      result["comparison"] = to_json(compare_designer_individual(p, d));
      emit.json(base_manifest("solve designer", to_json(p), true, std::nullopt),
                line("threshold", eq.threshold) +
                    line("internal_prize", eq.internal_prize) +
                    line("designer_value", eq.designer_value) +
                    line("dissipation_ratio", eq.dissipation_ratio),
                result);
      return kOk;
    };
  });

  auto* plan = solve->add_subcommand("planner", "Planner optimum and efficient prize");
  plan->add_option("--n", n, "Players")->required();
  plan->add_option("--cost", cost, "Cost per draw")->required();
  add_dist(plan, c);
  add_out(plan, c);
  plan->callback([&] {
    action = [&] {
      const auto d = c.distribution();
      const auto s = solve_planner(n, cost, d);
      Json result = to_json(s);
      if (!s.corner) result["efficient_prize_integral"] = efficient_prize_integral(n, cost, d);
      emit.json(base_manifest("solve planner", {{"n_players", n}, {"cost", cost}}, true,
                              std::nullopt),
                line("threshold", s.threshold) + line("welfare", s.welfare) +
                    line("efficient_prize", s.efficient_prize),
                result);
      return kOk;
    };
  });

  // ---- table --------------------------------------------------------------
  auto* table = app.add_subcommand("table", "Reproduce a reference table as CSV");
  table->require_subcommand(1);
  auto finite_table = [&](int k) {
    return [&, k] {
      if (cost_ratios.empty()) cost_ratios = {0.0, 0.05, 0.10};
      std::ostringstream csv;
      csv << "cost_ratio,N";
      for (int j = 1; j < k; ++j) csv << ",a" << j << ",a" << j << "_full";
      csv << ",exists,br_stable\n";
      Json sidecar = Json::array();
      for (double cr : cost_ratios) {
        const ThresholdProfile profile = threshold_profile(k, cr, n_min, n_max);
        sidecar.push_back(to_json(profile));
        for (const auto& row : profile.rows) {
          csv << format_real(cr) << ',' << row.n_players;
          for (int j = 0; j + 1 < k; ++j) {
            if (row.equilibrium.exists) {
              const double a = row.equilibrium.round_quantiles[j];
              csv << ',' << format_rounded3(a) << ',' << format_real(a);
            } else {
              csv << ",,";
            }
          }
          csv << ',' << (row.equilibrium.exists ? "true" : "false") << ','
              << (row.equilibrium.br_stable ? "true" : "false") << '\n';
        }
      }
      RunManifest mf = base_manifest(
          "table finite_k" + std::to_string(k),
          {{"n_draws", k}, {"cost_ratios", cost_ratios}, {"n_min", n_min}, {"n_max", n_max}},
          false, std::nullopt);
      if (!c.out.empty()) {
        Json diag = sidecar;
        round_reals(diag);
        mf.parameters["diagnostics"] = diag;
      }
      emit.csv(std::move(mf), csv.str());
      return kOk;
    };
  };
  for (int k : {2, 3}) {
    auto* t = table->add_subcommand("finite_k" + std::to_string(k),
                                    "Round-1 quantiles, k = " + std::to_string(k));
    t->add_option("--cost-ratios", cost_ratios, "c / W rows")->delimiter(',');
    t->add_option("--n-min", n_min, "Smallest N")->capture_default_str();
    t->add_option("--n-max", n_max, "Largest N")->capture_default_str();
    add_out(t, c);
    t->callback([&, k] { action = finite_table(k); });
  }

  auto* welfare = table->add_subcommand("welfare_examples", "Efficient prize by family");
  welfare->add_option("--n", n, "Players")->capture_default_str();
  welfare->add_option("--cost", cost, "Cost per draw")->capture_default_str();
  add_out(welfare, c);
  welfare->callback([&] {
    action = [&] {
      std::ostringstream csv;
      csv << "distribution,w_star,w_star_full,b_star_full,corner\n";
      for (const auto& d : {make_uniform(0, 1), make_exponential(1), make_pareto(2, 1)}) {
        const auto s = solve_planner(n, cost, d);
        csv << d.label().substr(0, d.label().find(':')) << ','
            << format_rounded3(s.efficient_prize) << ',' << format_real(s.efficient_prize)
            << ',' << format_real(s.threshold) << ',' << (s.corner ? "true" : "false")
            << '\n';
      }
      emit.csv(base_manifest("table welfare_examples", {{"n_players", n}, {"cost", cost}},
                             false, std::nullopt),
               csv.str());
      return kOk;
    };
  });

  auto* market = table->add_subcommand("large_market", "Designer acceptance vs M");
  market->add_option("--team", team, "Workers per designer")->capture_default_str();
  market->add_option("--cost", cost, "Cost per worker draw")->capture_default_str();
  market->add_option("--omega", omega, "Per-designer prize")->capture_default_str();
  market->add_option("--m-min", m_min, "Smallest M")->capture_default_str();
  market->add_option("--m-max", m_max, "Largest M")->capture_default_str();
  add_out(market, c);
  market->callback([&] {
    action = [&] {
      const auto rows = large_market_limit(team, cost, omega, m_min, m_max);
      emit.csv(base_manifest("table large_market",
                             {{"team_size", team}, {"cost", cost}, {"omega", omega},
                              {"m_min", m_min}, {"m_max", m_max}},
                             false, std::nullopt),
               large_market_csv(rows));
      return kOk;
    };
  });

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run a verification; exit 3 on failure");
  verify->require_subcommand(1);

  auto* vdiss = verify->add_subcommand("dissipation", "Full rent dissipation by simulation");
  vdiss->add_option("--n", n, "Players")->required();
  vdiss->add_option("--cost", cost, "Cost per draw")->required();
  vdiss->add_option("--prize", prize, "Prize")->capture_default_str();
  add_dist(vdiss, c);
  add_sim(vdiss, c);
  add_out(vdiss, c);
  vdiss->callback([&] {
    action = [&] {
      const ContestParams p{n, cost, prize};
      const auto d = c.distribution();
      const auto cfg = c.config();
      const auto eq = solve_symmetric(p, d);
      const StrategyProfile profile(static_cast<std::size_t>(n),
                                    Strategy::threshold(eq.threshold));
      const auto r = simulate_contest(profile, p, d, cfg);
      bool pass = within(r.dissipation_ratio, 1.0);
      std::string summary = verdict(pass, "dissipation ratio " +
                                              format_real(r.dissipation_ratio.mean) +
                                              " +- " + format_real(r.dissipation_ratio.se));
      for (std::size_t i = 0; i < r.players.size(); ++i) {
        const bool ok = within(r.players[i].payoff, 0.0);
        pass = pass && ok;
        summary += verdict(ok, "player " + std::to_string(i) + " payoff " +
                                   format_real(r.players[i].payoff.mean));
      }
      Json result = {{"simulation", to_json(r)}, {"pass", pass}};
      emit.json(base_manifest("verify dissipation", to_json(p), true, cfg.seed), summary,
                result);
      return pass ? kOk : kVerifyFailed;
    };
  });

  auto* vfree = verify->add_subcommand("distribution_free", "Same statistics under every law");
  vfree->add_option("--n", n, "Players")->required();
  vfree->add_option("--cost", cost, "Cost per draw")->required();
  vfree->add_option("--prize", prize, "Prize")->capture_default_str();
  vfree->add_option("--dists", dists, "Distribution specs (space separated)");
  add_sim(vfree, c);
  add_out(vfree, c);
  vfree->callback([&] {
    action = [&] {
      if (dists.empty()) dists = {"uniform:0,1", "exponential:1", "pareto:2,1"};
      std::vector<Distribution> laws;
      Json specs = Json::array();
      for (const auto& s : dists) {
        try {
          laws.push_back(parse_distribution_spec(s));
        } catch (const ContestError& e) {
          throw UsageError(e.what());
        }
        specs.push_back(to_json(laws.back()));
      }
      const ContestParams p{n, cost, prize};
      const auto cfg = c.config();
      const auto r = distribution_free_check(p, laws, cfg);
      std::string summary;
      for (const auto& g : r.gaps) {
        summary += verdict(g.within, g.quantity + " " + r.entries[g.first].label + " vs " +
                                         r.entries[g.second].label);
      }
      RunManifest mf = base_manifest("verify distribution_free", to_json(p), false, cfg.seed);
      mf.distribution = specs;
      emit.json(std::move(mf), summary, to_json(r));
      return r.pass ? kOk : kVerifyFailed;
    };
  });

  auto* vbr = verify->add_subcommand("best_response", "Deviation-grid Nash check");
  vbr->add_option("--preset", preset,
                  "symmetric | asymmetric-n3 | two-draw | perturbed")
      ->capture_default_str();
  vbr->add_option("--n", n, "Players (symmetric/perturbed)");
  vbr->add_option("--cost", cost, "Cost per draw (symmetric/perturbed)");
  vbr->add_option("--prize", prize, "Prize (symmetric/perturbed)");
  vbr->add_option("--grid", grid_points, "Deviation grid points")->capture_default_str();
  add_dist(vbr, c);
  add_sim(vbr, c);
  add_out(vbr, c);
  vbr->callback([&] {
    action = [&] {
      const auto d = c.distribution();
      const auto cfg = c.config();
      Json params = {{"preset", preset}, {"grid", grid_points}};
      std::vector<DeviationReport> reports;
      if (preset == "symmetric" || preset == "perturbed") {
        const ContestParams p{n, cost, prize};
        const auto eq = solve_symmetric(p, d);
        StrategyProfile profile(static_cast<std::size_t>(n),
                                Strategy::threshold(eq.threshold));
        if (preset == "perturbed") profile[0] = Strategy::threshold(eq.threshold + 0.1);
        params["contest"] = to_json(p);
        reports.push_back(deviation_scan(
            profile, 0, threshold_quantile_grid(d, grid_points),
            ContestSpec{cost, PrizeSchedule::winner_take_all(n, prize), false}, d, cfg));
      } else if (preset == "asymmetric-n3") {
        const ContestParams p{3, 0.1, 1.0};
        const auto eq = solve_asymmetric(p, d);
        const StrategyProfile profile{Strategy::threshold(eq.low_threshold),
                                      Strategy::threshold(eq.low_threshold),
                                      Strategy::threshold(eq.high_threshold)};
        params["contest"] = to_json(p);
        const ContestSpec spec{0.1, PrizeSchedule::winner_take_all(3, 1.0), false};
        for (int who : {2, 0}) {
          reports.push_back(deviation_scan(profile, who,
                                           threshold_quantile_grid(d, grid_points), spec,
                                           d, cfg));
        }
      } else if (preset == "two-draw") {
        const FiniteHorizonParams p{2, 0.05, 2};
        const auto eq = solve_two_draw(2, 0.05);
        const Strategy s = Strategy::from_quantiles(eq.round_quantiles, d);
        params["contest"] = to_json(p);
        reports.push_back(deviation_scan(
            {s, s}, 0, round_one_grid(eq.round_quantiles, d, grid_points),
            ContestSpec{0.05, PrizeSchedule::winner_take_all(2, 1.0), false}, d, cfg));
      } else {
        throw UsageError("unknown preset '" + preset + "'");
      }
      bool pass = true;
      std::string summary;
      Json result = Json::array();
      for (const auto& r : reports) {
        pass = pass && !r.any_flagged;
        summary += verdict(!r.any_flagged,
                           "player " + std::to_string(r.deviator) + " baseline payoff " +
                               format_real(r.baseline_payoff.mean) + " +- " +
                               format_real(r.baseline_payoff.se));
        result.push_back(to_json(r));
      }
      emit.json(base_manifest("verify best_response", params, true, cfg.seed), summary,
                {{"scans", result}, {"pass", pass}});
      return pass ? kOk : kVerifyFailed;
    };
  });

  auto* vfoc = verify->add_subcommand("designer_foc", "Finite-difference FOC check");
  vfoc->add_option("--m", m, "Designers")->required();
  vfoc->add_option("--team", team, "Workers per designer")->required();
  vfoc->add_option("--cost", cost, "Cost per worker draw")->required();
  vfoc->add_option("--meta-prize", meta_prize, "Meta prize")->capture_default_str();
  vfoc->add_option("--step", step, "Quantile-space step")->capture_default_str();
  add_dist(vfoc, c);
  add_out(vfoc, c);
  vfoc->callback([&] {
    action = [&] {
      const DesignerParams p{m, team, cost, meta_prize};
      const auto r = verify_designer_foc(p, c.distribution(), step);
      const bool deriv_ok = r.relative_error < 1e-4;
      const bool prob_ok = std::fabs(r.win_prob_at_equilibrium - 1.0 / m) < 1e-9;
      const bool foc_ok = r.foc_relative_gap < 1e-3;
      const bool pass = deriv_ok && prob_ok && foc_ok;
      std::string summary =
          verdict(deriv_ok, "dP/db relative error " + format_real(r.relative_error)) +
          verdict(prob_ok, "P(b) = " + format_real(r.win_prob_at_equilibrium)) +
          verdict(foc_ok, "marginal benefit vs cost gap " + format_real(r.foc_relative_gap));
      for (const auto& w : r.warnings) summary += "warning: " + w + "\n";
      Json result = to_json(r);
      result["pass"] = pass;
      Json params = to_json(p);
      params["step"] = step;
      emit.json(base_manifest("verify designer_foc", params, true, std::nullopt), summary,
                result);
      return pass ? kOk : kVerifyFailed;
    };
  });

  auto* vrec = verify->add_subcommand("recall", "Recall irrelevance (two-sample KS)");
  vrec->add_option("--n", n, "Players")->required();
  vrec->add_option("--cost", cost, "Cost per draw")->required();
  vrec->add_option("--prize", prize, "Prize")->capture_default_str();
  add_dist(vrec, c);
  add_sim(vrec, c);
  add_out(vrec, c);
  vrec->callback([&] {
    action = [&] {
      const ContestParams p{n, cost, prize};
      const auto cfg = c.config();
      const auto r = recall_irrelevance_check(p, c.distribution(), cfg);
      emit.json(base_manifest("verify recall", to_json(p), true, cfg.seed),
                verdict(r.pass, "KS " + format_real(r.ks) + " < " +
                                    format_real(r.critical_1pct)),
                to_json(r));
      return r.pass ? kOk : kVerifyFailed;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (!action) {
      err << "usage error: no command\n";
      return kUsage;
    }
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ContestError& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kInvalidParameter:
        return kUsage;
      case ErrorKind::kNotViable:
      case ErrorKind::kNoneExists:
      case ErrorKind::kNoSearchIncentive:
      case ErrorKind::kDegenerateTruncation:
      case ErrorKind::kDivergentObjective:
        return kNoSolution;
      case ErrorKind::kNumericFailure:
        return kNumericFailure;
    }
    return kNumericFailure;
  }
}

}  // namespace searchcontest::cli
