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

#include "searchcontest/planner.h"

#include <cmath>

#include <gtest/gtest.h>

#include "searchcontest/equilibrium.h"
#include "searchcontest/error.h"

namespace searchcontest {
namespace {

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

TEST(Welfare, Examples) {
  const auto u = make_uniform(0, 1);
  EXPECT_NEAR(planner_welfare(0.0, 1, 1e-12, u), 0.5, 1e-9);
  EXPECT_NEAR(planner_welfare(0.0, 2, 0.1, u), 2.0 / 3.0 - 0.2, 1e-12);
  EXPECT_NEAR(planner_welfare(0.5, 2, 0.1, u), 0.5 + 0.5 * 2.0 / 3.0 - 0.4, 1e-12);
}

TEST(Welfare, ExpectedMaxOracles) {
  // Order statistics: E[max of N Exp(1)] = H_N, shifted by memorylessness.
  for (int n = 1; n <= 8; ++n) {
    EXPECT_NEAR(expected_max_truncated(0.0, n, make_exponential(1)), harmonic(n), 1e-10);
    EXPECT_NEAR(expected_max_truncated(1.3, n, make_exponential(1)), 1.3 + harmonic(n), 1e-10);
    EXPECT_NEAR(expected_max_truncated(0.2, n, make_uniform(0, 1)), 0.2 + 0.8 * n / (n + 1.0),
                1e-12);
  }
  // Pareto(2, 1), N = 2: 1 + int_1^inf (2 x^-2 - x^-4) dx = 8/3.
  EXPECT_NEAR(expected_max_truncated(1.0, 2, make_pareto(2, 1)), 8.0 / 3.0, 1e-9);
}

TEST(Welfare, DivergentMean) {
  try {
    planner_welfare(2.0, 2, 0.1, make_pareto(1, 1));
    FAIL();
  } catch (const ContestError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDivergentObjective);
  }
  EXPECT_THROW(solve_planner(2, 0.1, make_pareto(0.8, 1)), ContestError);
}

TEST(Planner, UniformClosedForm) {
  for (int n : {2, 3, 5}) {
    for (double c : {0.01, 0.05, 0.1}) {
      const auto s = solve_planner(n, c, make_uniform(0, 1));
      const double k = c * n * (n + 1);
      if (k >= 1.0) {
        EXPECT_TRUE(s.corner) << n << ' ' << c;
        EXPECT_EQ(s.threshold, 0.0);
        continue;
      }
      EXPECT_FALSE(s.corner);
      EXPECT_NEAR(s.threshold, 1 - std::sqrt(k), 1e-8) << n << ' ' << c;
      EXPECT_NEAR(s.efficient_prize, std::sqrt(n * c / (n + 1)),
                  1e-8 * std::sqrt(n * c / (n + 1)));
    }
  }
}

TEST(Planner, ExponentialClosedForm) {
  for (int n : {2, 3, 5}) {
    for (double c : {0.01, 0.05, 0.1}) {
      const auto s = solve_planner(n, c, make_exponential(1));
      EXPECT_NEAR(s.threshold, std::log(1 / (n * c)), 1e-8) << n << ' ' << c;
      EXPECT_NEAR(s.efficient_prize, 1.0, 1e-8);
    }
  }
}

TEST(Planner, ParetoClosedForm) {
  for (double c : {0.01, 0.05, 0.1}) {
    const auto s = solve_planner(2, c, make_pareto(2, 1));
    EXPECT_NEAR(s.threshold, 2 / (3 * c), 1e-8 * 2 / (3 * c));
    EXPECT_NEAR(s.efficient_prize, 8 / (9 * c), 1e-8 * 8 / (9 * c));
  }
}

TEST(Planner, ReferenceExampleValues) {
  EXPECT_NEAR(solve_planner(2, 0.1, make_uniform(0, 1)).efficient_prize, 0.2582, 1e-4);
  EXPECT_NEAR(solve_planner(2, 0.1, make_uniform(0, 1)).threshold, 1 - std::sqrt(0.6), 1e-10);
  EXPECT_NEAR(solve_planner(2, 0.1, make_exponential(1)).threshold, std::log(5.0), 1e-10);
  EXPECT_NEAR(solve_planner(2, 0.1, make_pareto(2, 1)).efficient_prize, 8.889, 1e-3);
}

TEST(Planner, WelfareStationaryAndMaximal) {
  for (const auto& d : {make_uniform(0, 1), make_exponential(2), make_pareto(3, 1)}) {
    const auto s = solve_planner(3, 0.02, d);
    ASSERT_FALSE(s.corner) << d.label();
    const double h = 1e-4 * std::max(1.0, s.threshold);
    const double deriv = (planner_welfare(s.threshold + h, 3, 0.02, d) -
                          planner_welfare(s.threshold - h, 3, 0.02, d)) /
                         (2 * h);
    EXPECT_NEAR(deriv, 0.0, 1e-6) << d.label();
    for (double u : {0.1, 0.5, 0.9, 0.99}) {
      EXPECT_GE(s.welfare + 1e-12, planner_welfare(d.quantile(u), 3, 0.02, d));
    }
    EXPECT_NEAR(planner_foc_lhs(s.acceptance_prob, 3, d), 0.02, 1e-9);
  }
}

TEST(Planner, EfficientPrizeBridgesToCompetitiveThreshold) {
  for (const auto& d : {make_uniform(0, 1), make_exponential(1), make_pareto(2, 1)}) {
    const auto s = solve_planner(2, 0.05, d);
    const auto eq = solve_symmetric({2, 0.05, s.efficient_prize}, d);
    EXPECT_NEAR(eq.threshold, s.threshold, 1e-8 * std::max(1.0, s.threshold)) << d.label();
  }
}

TEST(Planner, IntegralFormOfEfficientPrize) {
  for (const auto& d : {make_uniform(0, 1), make_exponential(1), make_pareto(2, 1),
                        make_pareto(4, 2)}) {
    for (int n : {2, 3}) {
      const auto s = solve_planner(n, 0.01, d);
      const double integral = efficient_prize_integral(n, 0.01, d);
      EXPECT_NEAR(integral, s.efficient_prize, 1e-6 * s.efficient_prize) << d.label();
    }
  }
}

TEST(Classify, BothSidesOfEfficientPrize) {
  const auto u = make_uniform(0, 1);
  EXPECT_EQ(classify_prize(1.0, 2, 0.1, u).kind, SearchClass::kOversearch);
  const double w = solve_planner(2, 0.1, u).efficient_prize;
  const auto eff = classify_prize(w, 2, 0.1, u);
  EXPECT_EQ(eff.kind, SearchClass::kEfficient);
  EXPECT_LT(std::fabs(eff.gap), 1e-9);
  EXPECT_EQ(classify_prize(0.25, 2, 0.1, u).kind, SearchClass::kUndersearch);
  EXPECT_EQ(classify_prize(1.0, 2, 0.1, make_pareto(2, 1)).kind, SearchClass::kUndersearch);
  EXPECT_EQ(classify_prize(10.0, 2, 0.1, make_pareto(2, 1)).kind, SearchClass::kOversearch);
  EXPECT_THROW(classify_prize(0.1, 2, 0.1, u), ContestError);
  EXPECT_EQ(to_string(SearchClass::kUndersearch), "undersearch");
}

TEST(HazardOrder, DominanceImpliesPrizeOrdering) {
  // Uniform hazard 1/(1 - x) dominates the unit exponential hazard on [0, 1).
  const auto r = hazard_order_check(make_uniform(0, 1), make_exponential(1), 2, 0.05, 256);
  EXPECT_TRUE(r.dominance);
  EXPECT_TRUE(r.ordering_holds);
  EXPECT_TRUE(r.consistent);
  EXPECT_LE(r.efficient_prize_1, r.efficient_prize_2);
}

TEST(HazardOrder, CrossingHazardsReported) {
  // Exponential hazard 1 against Pareto 2/x: they cross at x = 2.
  const auto r = hazard_order_check(make_exponential(1), make_pareto(2, 1), 2, 0.1, 256);
  EXPECT_FALSE(r.dominance);
  EXPECT_GE(r.first_violation, 1.0);
  EXPECT_TRUE(r.ordering_holds);
  EXPECT_TRUE(r.consistent);
}

}  // namespace
}  // namespace searchcontest
