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

#include "searchcontest/serialization.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include <boost/algorithm/string.hpp>

#include "searchcontest/error.h"
#include "searchcontest/version.h"

namespace searchcontest {

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

void round_reals(Json& j, int digits) {
  if (j.is_number_float()) {
    j = round_significant(j.get<double>(), digits);
  } else if (j.is_structured()) {
    for (auto& child : j) round_reals(child, digits);
  }
}

std::string dump_json(Json j) {
  round_reals(j);
  return j.dump(2) + "\n";
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_rounded3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Distributions.

namespace {

double parse_real(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "bad number '" + text + "' in distribution spec '" + spec + "'");
  }
  return v;
}

Distribution make_family(const std::string& family, const std::vector<double>& p,
                         const std::string& spec) {
  auto need = [&](std::size_t count) {
    if (p.size() != count) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         family + " takes " + std::to_string(count) +
                             " parameter(s) in '" + spec + "'");
    }
  };
  if (family == "uniform") {
    if (p.empty()) return make_uniform(0.0, 1.0);
    need(2);
    return make_uniform(p[0], p[1]);
  }
  if (family == "exponential") {
    if (p.empty()) return make_exponential(1.0);
    need(1);
    return make_exponential(p[0]);
  }
  if (family == "pareto") {
    need(2);
    return make_pareto(p[0], p[1]);
  }
  throw ContestError(ErrorKind::kInvalidParameter,
                     "unknown distribution family '" + family + "'");
}

std::vector<const char*> param_names(const std::string& family) {
  if (family == "uniform") return {"lo", "hi"};
  if (family == "exponential") return {"rate"};
  if (family == "pareto") return {"shape", "scale"};
  throw ContestError(ErrorKind::kInvalidParameter,
                     "unknown distribution family '" + family + "'");
}

}  // namespace

Distribution parse_distribution_spec(const std::string& spec) {
  const std::string trimmed = boost::algorithm::trim_copy(spec);
  const auto colon = trimmed.find(':');
  const std::string family = boost::algorithm::to_lower_copy(trimmed.substr(0, colon));
  std::vector<double> params;
  if (colon != std::string::npos) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, trimmed.substr(colon + 1),
                            boost::algorithm::is_any_of(","));
    for (auto& part : parts) {
      params.push_back(parse_real(boost::algorithm::trim_copy(part), spec));
    }
  }
  return make_family(family, params, spec);
}

Distribution distribution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "distribution JSON needs a string 'family'");
  }
  const std::string family = j["family"].get<std::string>();
  try {
    if (family == "custom") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& knot : j.at("quantile_grid")) {
        knots.emplace_back(knot.at(0).get<double>(), knot.at(1).get<double>());
      }
      return make_custom_from_grid(std::move(knots));
    }
    std::vector<double> params;
    if (j.contains("params")) {
      const Json& p = j["params"];
      if (p.is_array()) {
        params = p.get<std::vector<double>>();
      } else if (p.is_object()) {
        for (const char* key : param_names(family)) params.push_back(p.at(key).get<double>());
      } else {
        throw ContestError(ErrorKind::kInvalidParameter,
                           "'params' must be an object or an array");
      }
    }
    return make_family(family, params, j.dump());
  } catch (const Json::exception& e) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       std::string("malformed distribution JSON: ") + e.what());
  }
}

Json to_json(const Distribution& d) {
  if (d.family() == Family::kCustom) {
    if (d.quantile_grid().empty()) return {{"family", "custom"}, {"label", d.label()}};
    Json grid = Json::array();
    for (const auto& [u, x] : d.quantile_grid()) grid.push_back({u, x});
    return {{"family", "custom"}, {"quantile_grid", grid}};
  }
  const std::string family = d.label().substr(0, d.label().find(':'));
  Json params = Json::object();
  const auto names = param_names(family);
  for (std::size_t i = 0; i < names.size(); ++i) params[names[i]] = d.parameters()[i];
  return {{"family", family}, {"params", params}};
}

// ---------------------------------------------------------------------------
// Infinite horizon.

Json to_json(const ContestParams& p) {
  return {{"n_players", p.n_players}, {"cost", p.cost}, {"prize", p.prize}};
}

Json to_json(const SymmetricEquilibrium& eq) {
  return {{"threshold", eq.threshold},
          {"acceptance_prob", eq.acceptance_prob},
          {"expected_draws", eq.expected_draws},
          {"expected_cost_per_player", eq.expected_cost_per_player},
          {"dissipation_ratio", eq.dissipation_ratio},
          {"player_value", eq.player_value}};
}

Json to_json(const MultiPrizeEquilibrium& eq) {
  return {{"threshold", eq.threshold},
          {"acceptance_prob", eq.acceptance_prob},
          {"player_value", eq.player_value},
          {"total_expected_cost", eq.total_expected_cost},
          {"dissipation_ratio", eq.dissipation_ratio}};
}

Json to_json(const AsymmetricEquilibrium& eq) {
  return {{"low_threshold", eq.low_threshold},
          {"high_threshold", eq.high_threshold},
          {"high_player_value", eq.high_player_value},
          {"low_quantile", eq.low_quantile},
          {"high_quantile", eq.high_quantile},
          {"symmetric_quantile", eq.symmetric_quantile},
          {"high_residual", eq.high_residual},
          {"low_residual", eq.low_residual}};
}

Json to_json(const PrizeSchedule& prizes) { return prizes.prizes(); }

// ---------------------------------------------------------------------------
// Finite horizon.

Json to_json(const FiniteHorizonParams& p) {
  return {{"n_players", p.n_players},
          {"cost_ratio", p.cost_ratio},
          {"n_draws", p.n_draws}};
}

Json to_json(const FiniteHorizonEquilibrium& eq) {
  Json j = {{"exists", eq.exists}, {"method", eq.method}};
  if (!eq.exists) return j;
  j["round_quantiles"] = eq.round_quantiles;
  j["diagnostics"] = {{"iterations", eq.iterations},
                      {"max_residual", eq.max_residual},
                      {"continuation_values", eq.continuation_values},
                      {"ex_ante_value", eq.ex_ante_value},
                      {"br_stable", eq.br_stable},
                      {"alternative_solutions", eq.alternative_solutions},
                      {"br_trace", eq.trace}};
  return j;
}

Json to_json(const ThresholdProfile& profile) {
  Json rows = Json::array();
  for (const auto& row : profile.rows) {
    Json r = to_json(row.equilibrium);
    r["n_players"] = row.n_players;
    rows.push_back(std::move(r));
  }
  Json j = {{"n_draws", profile.n_draws},
            {"cost_ratio", profile.cost_ratio},
            {"rows", rows}};
  j["peak_n"] = profile.peak_n ? Json(*profile.peak_n) : Json(nullptr);
  j["existence_frontier"] =
      profile.existence_frontier ? Json(*profile.existence_frontier) : Json(nullptr);
  return j;
}

std::string threshold_profile_csv(const ThresholdProfile& profile) {
  std::ostringstream out;
  out << "N";
  for (int j = 1; j < profile.n_draws; ++j) out << ",a" << j;
  out << ",exists\n";
  for (const auto& row : profile.rows) {
    out << row.n_players;
    for (int j = 0; j + 1 < profile.n_draws; ++j) {
      out << ',';
      if (row.equilibrium.exists) out << format_real(row.equilibrium.round_quantiles[j]);
    }
    out << ',' << (row.equilibrium.exists ? "true" : "false") << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Designers.

Json to_json(const DesignerParams& p) {
  return {{"n_designers", p.n_designers},
          {"team_size", p.team_size},
          {"cost", p.cost},
          {"meta_prize", p.meta_prize}};
}

Json to_json(const DesignerEquilibrium& eq) {
  return {{"threshold", eq.threshold},
          {"threshold_quantile", eq.threshold_quantile},
          {"internal_prize", eq.internal_prize},
          {"designer_value", eq.designer_value},
          {"dissipation_ratio", eq.dissipation_ratio}};
}

Json to_json(const DesignerFocReport& r) {
  return {{"threshold", r.threshold},
          {"win_prob_at_equilibrium", r.win_prob_at_equilibrium},
          {"fd_derivative", r.fd_derivative},
          {"closed_form_derivative", r.closed_form_derivative},
          {"relative_error", r.relative_error},
          {"marginal_benefit", r.marginal_benefit},
          {"marginal_cost", r.marginal_cost},
          {"foc_relative_gap", r.foc_relative_gap},
          {"warnings", r.warnings}};
}

Json to_json(const DesignerComparison& c) {
  return {{"designer_quantile", c.designer_quantile},
          {"individual_quantile", c.individual_quantile},
          {"designer_lower", c.designer_lower}};
}

Json to_json(const LargeMarketRow& row) {
  return {{"n_designers", row.n_designers},
          {"accept_prob", row.accept_prob},
          {"limit_gap", row.limit_gap},
          {"viable", row.viable}};
}

std::string large_market_csv(const std::vector<LargeMarketRow>& rows) {
  std::ostringstream out;
  out << "M,accept_prob,limit_gap\n";
  for (const auto& row : rows) {
    out << row.n_designers << ',' << format_real(row.accept_prob) << ','
        << format_real(row.limit_gap) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Planner.

Json to_json(const PlannerSolution& s) {
  return {{"threshold", s.threshold},
          {"welfare", s.welfare},
          {"efficient_prize", s.efficient_prize},
          {"acceptance_prob", s.acceptance_prob},
          {"foc_residual", s.foc_residual},
          {"corner", s.corner},
          {"candidate_roots", s.candidate_roots}};
}

Json to_json(const PrizeClassification& c) {
  return {{"classification", to_string(c.kind)},
          {"competitive_threshold", c.competitive_threshold},
          {"planner_threshold", c.planner_threshold},
          {"gap", c.gap}};
}

Json to_json(const HazardOrderReport& r) {
  Json j = {{"dominance", r.dominance},
            {"efficient_prize_1", r.efficient_prize_1},
            {"efficient_prize_2", r.efficient_prize_2},
            {"ordering_holds", r.ordering_holds},
            {"consistent", r.consistent},
            {"grid_points", r.grid_points}};
  j["first_violation"] = r.dominance ? Json(nullptr) : Json(r.first_violation);
  return j;
}

// ---------------------------------------------------------------------------
// Simulation.

Json to_json(const Estimate& e) { return {{"mean", e.mean}, {"se", e.se}}; }

Json to_json(const Strategy& s) {
  if (s.kind == Strategy::Kind::kThreshold) {
    return {{"kind", "threshold"}, {"threshold", s.thresholds[0]}};
  }
  return {{"kind", "finite_horizon"}, {"thresholds", s.thresholds}};
}

Json to_json(const SimulationConfig& cfg) {
  return {{"replications", cfg.replications},
          {"seed", cfg.seed},
          {"max_draws_cap", cfg.max_draws_cap},
          {"stream_offset", cfg.stream_offset}};
}

Json to_json(const SimulationReport& r) {
  Json players = Json::array();
  for (const auto& p : r.players) {
    players.push_back({{"payoff", to_json(p.payoff)},
                       {"cost", to_json(p.cost)},
                       {"draws", to_json(p.draws)},
                       {"win_frequency", to_json(p.win_frequency)},
                       {"acceptance_rate", to_json(p.acceptance_rate)}});
  }
  return {{"players", players},
          {"dissipation_ratio", to_json(r.dissipation_ratio)},
          {"acceptance_rate", to_json(r.acceptance_rate)},
          {"draws_per_player", to_json(r.draws_per_player)},
          {"cost_per_player", to_json(r.cost_per_player)},
          {"replications", r.replications},
          {"seed", r.seed},
          {"max_draws_cap", r.max_draws_cap},
          {"capped_runs", r.capped_runs},
          {"warnings", r.warnings}};
}

Json to_json(const DeviationReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    points.push_back({{"strategy", to_json(p.strategy)},
                      {"payoff", to_json(p.payoff)},
                      {"gain", to_json(p.gain)},
                      {"flagged", p.flagged}});
  }
  Json j = {{"deviator", r.deviator},
            {"baseline_payoff", to_json(r.baseline_payoff)},
            {"any_flagged", r.any_flagged},
            {"points", points}};
  j["best_point"] = r.best_point ? Json(*r.best_point) : Json(nullptr);
  return j;
}

Json to_json(const DistributionFreeReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"distribution", e.label}, {"report", to_json(e.report)}});
  }
  Json gaps = Json::array();
  for (const auto& g : r.gaps) {
    gaps.push_back({{"first", r.entries[g.first].label},
                    {"second", r.entries[g.second].label},
                    {"quantity", g.quantity},
                    {"gap", g.gap},
                    {"joint_se", g.joint_se},
                    {"within", g.within}});
  }
  return {{"entries", entries}, {"gaps", gaps}, {"pass", r.pass}};
}

Json to_json(const RecallReport& r) {
  return {{"ks", r.ks},
          {"critical_1pct", r.critical_1pct},
          {"pass", r.pass},
          {"samples", r.samples},
          {"mean_final_no_recall", r.mean_final_no_recall},
          {"mean_final_recall", r.mean_final_recall}};
}

Json to_json(const DesignerSimulationReport& r) {
  Json payoffs = Json::array();
  for (const auto& e : r.designer_payoff) payoffs.push_back(to_json(e));
  Json wins = Json::array();
  for (const auto& e : r.win_frequency) wins.push_back(to_json(e));
  return {{"dissipation_ratio", to_json(r.dissipation_ratio)},
          {"designer_payoff", payoffs},
          {"win_frequency", wins},
          {"worker_payoff", to_json(r.worker_payoff)},
          {"replications", r.replications},
          {"seed", r.seed},
          {"max_draws_cap", r.max_draws_cap},
          {"capped_runs", r.capped_runs}};
}

// ---------------------------------------------------------------------------
// Manifest.

RunManifest RunManifest::start(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.tool_version = kVersion;
  m.format_version = kFormatVersion;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.created_at = buf;
  return m;
}

Json to_json(const RunManifest& m) {
  Json j = {{"command", m.command},
            {"parameters", m.parameters},
            {"distribution", m.distribution},
            {"outputs", m.outputs},
            {"tool_version", m.tool_version},
            {"format_version", m.format_version},
            {"created_at", m.created_at}};
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  return j;
}

}  // namespace searchcontest
