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

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "searchcontest/equilibrium.h"
#include "searchcontest/error.h"

namespace searchcontest {
namespace {

// Independent oracle: a team using quantile threshold q ends with a best
// worker quantile whose CDF is ((v - q)/(1 - q))^N on [q, 1].
double win_prob_oracle(int m, int n, double eq_q, double dev_q) {
  auto team_cdf = [n](double q, double v) {
    return v <= q ? 0.0 : std::pow((v - q) / (1 - q), n);
  };
  auto integrand = [&](double v) {
    const double density = n * std::pow((v - dev_q) / (1 - dev_q), n - 1) / (1 - dev_q);
    return density * std::pow(team_cdf(eq_q, v), m - 1);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, dev_q, 1.0,
                                                                       15, 1e-14);
}

TEST(Designer, SingleWorkerTeamsReduceToIndividualContest) {
  const auto d = make_uniform(0, 1);
  const auto des = solve_designer({2, 1, 0.1, 1.0}, d);
  const auto ind = solve_symmetric({2, 0.1, 1.0}, d);
  EXPECT_NEAR(des.threshold_quantile, 0.8, 1e-12);
  EXPECT_NEAR(des.threshold, ind.threshold, 1e-12);
  for (int m = 2; m <= 6; ++m) {
    const auto e = solve_designer({m, 1, 0.02, 1.0}, make_exponential(1));
    const auto s = solve_symmetric({m, 0.02, 1.0}, make_exponential(1));
    EXPECT_NEAR(e.threshold, s.threshold, 1e-12) << m;
  }
}

TEST(Designer, ClosedFormValues) {
  const auto eq = solve_designer({2, 2, 0.05, 1.0}, make_uniform(0, 1));
  EXPECT_NEAR(eq.threshold_quantile, 0.7, 1e-12);
  EXPECT_NEAR(eq.dissipation_ratio, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(eq.designer_value, 1.0 / 6.0, 1e-12);
  for (int m = 2; m <= 4; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const double c = 0.01;
      const auto e = solve_designer({m, n, c, 1.0}, make_pareto(2, 1));
      EXPECT_NEAR(1 - e.threshold_quantile, c * m * (n * m - 1) / (m - 1.0), 1e-12);
      EXPECT_NEAR(e.dissipation_ratio, n * (m - 1.0) / (n * m - 1.0), 1e-12);
      EXPECT_NEAR(e.designer_value, (n - 1.0) / (m * (n * m - 1.0)), 1e-12);
      // Designer rent plus worker spend exhausts the meta prize.
      EXPECT_NEAR(m * e.designer_value + e.dissipation_ratio, 1.0, 1e-12);
    }
  }
}

TEST(Designer, NotViable) {
  try {
    solve_designer({2, 2, 0.2, 1.0}, make_uniform(0, 1));
    FAIL();
  } catch (const ContestError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotViable);
  }
  EXPECT_THROW(solve_designer({1, 2, 0.01, 1.0}, make_uniform(0, 1)), ContestError);
}

TEST(Designer, WinProbabilityMatchesOracle) {
  for (int m : {2, 3, 4}) {
    for (int n : {1, 2, 3}) {
      EXPECT_NEAR(designer_win_probability(m, n, 0.6, 0.6), 1.0 / m, 1e-12);
      for (double dev : {0.3, 0.55, 0.8}) {
        EXPECT_NEAR(designer_win_probability(m, n, 0.6, dev), win_prob_oracle(m, n, 0.6, dev),
                    1e-10)
            << m << ' ' << n << ' ' << dev;
      }
    }
  }
}

TEST(Designer, FocDerivativeGrid) {
  for (const auto& d : {make_uniform(0, 1), make_exponential(1)}) {
    for (int m : {2, 3}) {
      for (int n : {1, 2, 3}) {
        const auto r = verify_designer_foc({m, n, 0.02, 1.0}, d);
        EXPECT_LT(r.relative_error, 1e-4) << d.label() << ' ' << m << ' ' << n;
        EXPECT_NEAR(r.win_prob_at_equilibrium, 1.0 / m, 1e-12);
        EXPECT_LT(r.foc_relative_gap, 1e-4);
        EXPECT_TRUE(r.warnings.empty());
      }
    }
  }
}

TEST(Designer, FocExample) {
  const auto r = verify_designer_foc({2, 2, 0.05, 1.0}, make_uniform(0, 1), 1e-5);
  EXPECT_LT(r.relative_error, 1e-4);
  EXPECT_NEAR(r.win_prob_at_equilibrium, 0.5, 1e-12);
  const auto e = verify_designer_foc({3, 2, 0.05, 1.0}, make_exponential(1));
  EXPECT_LT(e.relative_error, 1e-4);
}

TEST(Designer, StepWarnings) {
  const DesignerParams p{2, 2, 0.05, 1.0};
  EXPECT_FALSE(verify_designer_foc(p, make_uniform(0, 1), 0.05).warnings.empty());
  EXPECT_FALSE(verify_designer_foc(p, make_uniform(0, 1), 1e-10).warnings.empty());
}

TEST(Designer, ThresholdBelowIndividualContest) {
  for (double c : {0.01, 0.03, 0.05}) {
    const auto cmp = compare_designer_individual({2, 2, c, 1.0}, make_uniform(0, 1));
    EXPECT_TRUE(cmp.designer_lower) << c;
    EXPECT_LT(cmp.designer_quantile, cmp.individual_quantile);
    EXPECT_NEAR(cmp.individual_quantile, 1 - 4 * c, 1e-12);
  }
}

TEST(LargeMarket, Examples) {
  const auto rows = large_market_limit(2, 0.05, 1.0, 2, 1000);
  ASSERT_EQ(rows.size(), 999u);
  EXPECT_NEAR(rows.front().accept_prob, 0.15, 1e-12);
  EXPECT_NEAR(rows.back().accept_prob, 0.1, 1e-3);
  EXPECT_NEAR(rows.back().limit_gap, rows.back().accept_prob - 0.1, 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].accept_prob, rows[i - 1].accept_prob);
  }
}

TEST(LargeMarket, DissipationApproachesTullockRatio) {
  for (int m : {2, 3, 5}) {
    const auto e = solve_designer({m, 5000, 1e-6, 1.0}, make_uniform(0, 1));
    EXPECT_NEAR(e.dissipation_ratio, (m - 1.0) / m, 1e-3);
  }
}

}  // namespace
}  // namespace searchcontest
