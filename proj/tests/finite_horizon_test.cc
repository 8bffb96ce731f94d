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

#include "searchcontest/finite_horizon.h"

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "searchcontest/error.h"

namespace searchcontest {
namespace {

// Reference three-decimal round-1 thresholds for N = 2..9; NaN marks a
// cell printed without a value.
constexpr double kNa = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoDraw[3][8] = {
    {.618, .691, .738, .770, .795, .814, .829, .842},
    {.572, .647, .691, .720, .740, .754, .762, .765},
    {.525, .594, .625, .629, .590, kNa, kNa, kNa}};
constexpr double kThreeDraw[3][8] = {
    {.743, .797, .829, .851, .868, .881, .891, .899},
    {.688, .745, .774, .790, .798, .796, .777, .715},
    {.631, .677, .677, .609, .460, .324, .207, .107}};
constexpr double kCosts[3] = {0.0, 0.05, 0.10};

double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

TEST(OpponentFinalCdf, TwoDrawShape) {
  const OpponentFinalCdf h({0.6});
  for (double u : {0.0, 0.1, 0.6, 0.75, 1.0}) {
    EXPECT_NEAR(h(u), std::max(u - 0.6, 0.0) + 0.6 * u, 1e-15) << u;
  }
  EXPECT_NEAR(h.inverse(h(0.3)), 0.3, 1e-14);
  EXPECT_NEAR(h.inverse(h(0.8)), 0.8, 1e-14);
}

TEST(OpponentFinalCdf, IntegratePowerMatchesQuadrature) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.01, 0.99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(1 + trial % 3);
    for (auto& v : a) v = unit(gen);
    const OpponentFinalCdf h(a);
    EXPECT_NEAR(h(0.0), 0.0, 1e-15);
    EXPECT_NEAR(h(1.0), 1.0, 1e-15);
    for (int p : {1, 2, 5}) {
      const double lower = unit(gen) * 0.5;
      const double upper = 0.5 + unit(gen) * 0.5;
      auto oracle = [&](double lo, double hi) {
        // Split at the kinks so each panel is a polynomial.
        std::vector<double> cuts{lo, hi};
        for (double k : a) {
          if (k > lo && k < hi) cuts.push_back(k);
        }
        std::sort(cuts.begin(), cuts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
          total += gk([&](double u) { return std::pow(h(u), p); }, cuts[i], cuts[i + 1]);
        }
        return total;
      };
      EXPECT_NEAR(h.integrate_power(p, lower), oracle(lower, 1.0), 1e-13)
          << trial << ' ' << p;
      EXPECT_NEAR(h.integrate_power(p, lower, upper), oracle(lower, upper), 1e-13)
          << trial << ' ' << p;
      EXPECT_NEAR(h.integrate_power(p, 0.0, upper), oracle(0.0, upper), 1e-13)
          << trial << ' ' << p;
    }
  }
}

TEST(TwoDraw, ZeroCostTwoPlayersIsGoldenRatio) {
  // 1 = 2a^2 + a^3 factors as (a + 1)(a^2 + a - 1).
  const auto eq = solve_two_draw(2, 0.0);
  ASSERT_TRUE(eq.exists);
  const double a = eq.round_quantiles[0];
  EXPECT_NEAR(a, (std::sqrt(5.0) - 1) / 2, 1e-12);
  EXPECT_NEAR(2 * a * a + a * a * a, 1.0, 1e-12);
}

TEST(TwoDraw, ClosedFormResidual) {
  for (int n = 2; n <= 12; ++n) {
    for (double c : {0.0, 0.01, 0.05}) {
      const auto eq = solve_two_draw(n, c);
      ASSERT_TRUE(eq.exists) << n << ' ' << c;
      EXPECT_NEAR(two_draw_cost_ratio(n, eq.round_quantiles[0]), c, 1e-12);
    }
  }
}

TEST(TwoDraw, Examples) {
  EXPECT_NEAR(solve_two_draw(2, 0.0).round_quantiles[0], 0.618, 1e-3);
  EXPECT_NEAR(solve_two_draw(5, 0.1).round_quantiles[0], 0.629, 1e-3);
  EXPECT_NEAR(solve_k_draw({2, 0.05, 2}).round_quantiles[0], 0.572, 1e-3);
}

// With c/W = 0.1 the closed form still has a root at N = 7; it is a
// repelling fixed point of damped best response.
TEST(TwoDraw, HighCostLargeFieldRootIsUnstable) {
  const auto eq = solve_two_draw(7, 0.1);
  ASSERT_TRUE(eq.exists);
  EXPECT_NEAR(two_draw_cost_ratio(7, eq.round_quantiles[0]), 0.1, 1e-12);
  EXPECT_FALSE(eq.br_stable);
  EXPECT_TRUE(solve_two_draw(5, 0.1).br_stable);
}

TEST(TwoDraw, NonExistence) {
  // c/W at or above 1/N leaves no root in (0, 1).
  EXPECT_FALSE(solve_two_draw(2, 0.6).exists);
  EXPECT_FALSE(solve_two_draw(12, 0.3).exists);
}

TEST(TwoDraw, ZeroCostIncreasingInPlayers) {
  double prev = 0.0;
  for (int n = 2; n <= 20; ++n) {
    const double a = solve_two_draw(n, 0.0).round_quantiles[0];
    EXPECT_GT(a, prev) << n;
    prev = a;
  }
}

TEST(KDraw, TwoDrawBackwardInductionMatchesClosedForm) {
  for (int ci = 0; ci < 3; ++ci) {
    for (int n = 2; n <= 9; ++n) {
      const auto bi = solve_k_draw({n, kCosts[ci], 2});
      const auto cf = solve_two_draw(n, kCosts[ci]);
      ASSERT_EQ(bi.exists, cf.exists) << n << ' ' << kCosts[ci];
      if (!cf.exists) continue;
      EXPECT_NEAR(bi.round_quantiles[0], cf.round_quantiles[0], 1e-9)
          << n << ' ' << kCosts[ci];
    }
  }
}

TEST(KDraw, ReferenceTwoDrawTable) {
  for (int ci = 0; ci < 3; ++ci) {
    for (int n = 2; n <= 9; ++n) {
      const double expected = kTwoDraw[ci][n - 2];
      if (std::isnan(expected)) continue;
      const auto eq = solve_k_draw({n, kCosts[ci], 2});
      ASSERT_TRUE(eq.exists);
      EXPECT_NEAR(eq.round_quantiles[0], expected, 1e-3) << n << ' ' << kCosts[ci];
    }
  }
}

TEST(KDraw, ReferenceThreeDrawTable) {
  for (int ci = 0; ci < 3; ++ci) {
    for (int n = 2; n <= 9; ++n) {
      // N = 9, c/W = 0.1 sits on a nearly flat zero-payoff manifold; the
      // well-conditioned root is checked separately below.
      if (ci == 2 && n == 9) continue;
      const auto eq = solve_k_draw({n, kCosts[ci], 3});
      ASSERT_TRUE(eq.exists) << n << ' ' << kCosts[ci];
      EXPECT_NEAR(eq.round_quantiles[0], kThreeDraw[ci][n - 2], 1e-3)
          << n << ' ' << kCosts[ci];
    }
  }
}

TEST(KDraw, IndifferenceHoldsAtReturnedPoints) {
  for (int k : {3, 4}) {
    for (int n : {2, 3, 5, 9}) {
      for (double c : {0.0, 0.05, 0.1}) {
        const auto eq = solve_k_draw({n, c, k});
        if (!eq.exists) continue;
        ASSERT_EQ(eq.round_quantiles.size(), static_cast<std::size_t>(k - 1));
        const auto r = indifference_residuals(eq.round_quantiles, n, c);
        for (double v : r) EXPECT_LT(std::fabs(v), 1e-9) << k << ' ' << n << ' ' << c;
        for (double a : eq.round_quantiles) {
          EXPECT_GT(a, 0.0);
          EXPECT_LT(a, 1.0);
        }
      }
    }
  }
}

TEST(KDraw, LowFieldThreeDrawThresholdsDecreaseByRound) {
  // With more draws left a player is pickier.
  const auto eq = solve_k_draw({3, 0.05, 4});
  ASSERT_TRUE(eq.exists);
  EXPECT_GT(eq.round_quantiles[0], eq.round_quantiles[1]);
  EXPECT_GT(eq.round_quantiles[1], eq.round_quantiles[2]);
}

TEST(KDraw, BestResponseReproducesFixedPoint) {
  const auto eq = solve_k_draw({4, 0.05, 3});
  const auto br = best_response(eq.round_quantiles, 4, 0.05);
  for (std::size_t j = 0; j < eq.round_quantiles.size(); ++j) {
    EXPECT_NEAR(br.round_quantiles[j], eq.round_quantiles[j], 1e-8);
  }
  EXPECT_NEAR(br.ex_ante_value, eq.ex_ante_value, 1e-10);
}

TEST(KDraw, ZeroCostThreeDrawIncreasing) {
  double prev = 0.0;
  for (int n = 2; n <= 12; ++n) {
    const double a = solve_k_draw({n, 0.0, 3}).round_quantiles[0];
    EXPECT_GT(a, prev) << n;
    prev = a;
  }
}

// Continuation values here fall to 1e-15 (N=8) and 1e-24 (N=9), below the
// resolution of V_k = int h^p - c. References from 45-digit arithmetic.
TEST(KDraw, HighCostCellsMatchExtendedPrecision) {
  struct Cell {
    int n;
    double a1;
    double a2;
  };
  for (const Cell& cell : {Cell{8, 0.207230936178, 0.206383586404},
                           Cell{9, 0.100933580109, 0.100833944379}}) {
    const auto eq = solve_k_draw({cell.n, 0.1, 3});
    ASSERT_TRUE(eq.exists) << cell.n;
    EXPECT_NEAR(eq.round_quantiles[0], cell.a1, 1e-9) << cell.n;
    EXPECT_NEAR(eq.round_quantiles[1], cell.a2, 1e-9) << cell.n;
    const auto r = indifference_residuals(eq.round_quantiles, cell.n, 0.1);
    for (double v : r) EXPECT_LT(std::fabs(v), 1e-14) << cell.n;
  }
}

TEST(KDraw, InvalidParameters) {
  EXPECT_THROW(solve_k_draw({1, 0.1, 2}), ContestError);
  EXPECT_THROW(solve_k_draw({2, -0.1, 2}), ContestError);
  EXPECT_THROW(solve_k_draw({2, 0.1, 1}), ContestError);
}

TEST(Profile, PeaksAndFrontier) {
  const auto p = threshold_profile(2, 0.05, 2, 9);
  ASSERT_TRUE(p.peak_n.has_value());
  EXPECT_EQ(*p.peak_n, 9);
  EXPECT_NEAR(p.rows.back().equilibrium.round_quantiles[0], 0.765, 1e-3);
  EXPECT_FALSE(p.existence_frontier.has_value());
  EXPECT_EQ(*threshold_profile(2, 0.10, 2, 9).peak_n, 5);
  EXPECT_EQ(*threshold_profile(3, 0.05, 2, 9).peak_n, 6);
  const auto zero = threshold_profile(2, 0.0, 2, 9);
  for (std::size_t i = 1; i < zero.rows.size(); ++i) {
    EXPECT_GT(zero.rows[i].equilibrium.round_quantiles[0],
              zero.rows[i - 1].equilibrium.round_quantiles[0]);
  }
  const auto far = threshold_profile(2, 0.3, 2, 6);
  ASSERT_TRUE(far.existence_frontier.has_value());
  EXPECT_FALSE(far.rows[*far.existence_frontier - 2].equilibrium.exists);
}

}  // namespace
}  // namespace searchcontest
