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

#ifndef SEARCHCONTEST_SERIALIZATION_H_
#define SEARCHCONTEST_SERIALIZATION_H_

// JSON and CSV forms of every result type, distribution specs, and the run
// manifest attached to each artifact. Reals are rounded to 15 significant
// digits so output is stable across platforms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "searchcontest/distribution.h"
#include "searchcontest/equilibrium.h"
#include "searchcontest/finite_horizon.h"
#include "searchcontest/hierarchy.h"
#include "searchcontest/monte_carlo.h"
#include "searchcontest/planner.h"

namespace searchcontest {

using Json = nlohmann::json;

double round_significant(double x, int digits = 15);
// Rounds every floating-point leaf in place.
void round_reals(Json& j, int digits = 15);
// round_reals followed by a 2-space indented dump with a trailing newline.
std::string dump_json(Json j);

// "uniform:0,1", "exponential:1", "pareto:2,1". Bare "uniform" and
// "exponential" take their standard parameters. Throws invalid-parameter.
Distribution parse_distribution_spec(const std::string& spec);
// {"family": "uniform", "params": {"lo": 0, "hi": 1}} (params may also be
// a positional array) or {"family": "custom", "quantile_grid": [[u, x], ...]}.
Distribution distribution_from_json(const Json& j);
// Custom laws built from callables serialise as their label only.
Json to_json(const Distribution& d);

Json to_json(const ContestParams& p);
Json to_json(const SymmetricEquilibrium& eq);
Json to_json(const MultiPrizeEquilibrium& eq);
Json to_json(const AsymmetricEquilibrium& eq);
Json to_json(const PrizeSchedule& prizes);
Json to_json(const FiniteHorizonParams& p);
Json to_json(const FiniteHorizonEquilibrium& eq);
Json to_json(const ThresholdProfile& profile);
Json to_json(const DesignerParams& p);
Json to_json(const DesignerEquilibrium& eq);
Json to_json(const DesignerFocReport& r);
Json to_json(const DesignerComparison& c);
Json to_json(const LargeMarketRow& row);
Json to_json(const PlannerSolution& s);
Json to_json(const PrizeClassification& c);
Json to_json(const HazardOrderReport& r);
Json to_json(const Estimate& e);
Json to_json(const Strategy& s);
Json to_json(const SimulationConfig& cfg);
Json to_json(const SimulationReport& r);
Json to_json(const DeviationReport& r);
Json to_json(const DistributionFreeReport& r);
Json to_json(const RecallReport& r);
Json to_json(const DesignerSimulationReport& r);

// "N,a1,...,a_{k-1},exists" with 15-digit values; empty cells when the
// equilibrium does not exist.
std::string threshold_profile_csv(const ThresholdProfile& profile);
// "M,accept_prob,limit_gap".
std::string large_market_csv(const std::vector<LargeMarketRow>& rows);

// 15 significant digits, shortest form.
std::string format_real(double x);
// Fixed 3 decimals, as the reference tables print.
std::string format_rounded3(double x);

struct RunManifest {
  std::string command;
  Json parameters = Json::object();
  Json distribution;  // null when the command takes none
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;
  std::string tool_version;
  int format_version = 0;
  std::string created_at;  // the only non-reproducible field

  // Fills tool/format version and the UTC timestamp.
  static RunManifest start(std::string command);
};
Json to_json(const RunManifest& m);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_SERIALIZATION_H_
