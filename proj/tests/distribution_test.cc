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

#include "searchcontest/distribution.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "searchcontest/error.h"

namespace searchcontest {
namespace {

std::vector<Distribution> builtin_laws() {
  return {make_uniform(0, 1), make_uniform(-2, 3), make_exponential(1),
          make_exponential(2.5), make_pareto(2, 1), make_pareto(3.5, 2)};
}

// One-sample KS statistic of the PIT values against U(0, 1).
double ks_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  return d;
}

TEST(Uniform, Examples) {
  const auto d = make_uniform(0, 1);
  EXPECT_DOUBLE_EQ(d.cdf(0.5), 0.5);
  EXPECT_DOUBLE_EQ(d.hazard(0.0), 1.0);
  EXPECT_DOUBLE_EQ(d.quantile(0.8), 0.8);
  EXPECT_DOUBLE_EQ(d.hazard(0.75), 4.0);
  EXPECT_EQ(d.label(), "uniform:0,1");
}

TEST(Exponential, Examples) {
  EXPECT_DOUBLE_EQ(make_exponential(1).hazard(3.7), 1.0);
  EXPECT_NEAR(make_exponential(1).quantile(1 - 0.2), std::log(5.0), 1e-15);
  EXPECT_EQ(make_exponential(2).cdf(0), 0.0);
  EXPECT_DOUBLE_EQ(make_exponential(2.5).hazard(0.1), 2.5);
}

TEST(Pareto, Examples) {
  const auto d = make_pareto(2, 1);
  EXPECT_DOUBLE_EQ(d.hazard(4), 0.5);
  EXPECT_EQ(d.cdf(1), 0.0);
  EXPECT_NEAR(d.quantile(0.75), 2.0, 1e-15);
  EXPECT_TRUE(d.has_finite_mean());
  EXPECT_FALSE(make_pareto(1, 1).has_finite_mean());
}

TEST(Factories, RejectBadParameters) {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const ContestError& e) {
      return e.kind();
    }
    return ErrorKind::kNumericFailure;
  };
  EXPECT_EQ(kind([] { make_uniform(1, 1); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_uniform(2, 1); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_exponential(0); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_exponential(-1); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_pareto(0, 1); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_pareto(2, -1); }), ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_custom_from_grid({{0, 0}, {0.5, 0}, {1, 1}}); }),
            ErrorKind::kInvalidParameter);
  EXPECT_EQ(kind([] { make_custom_from_grid({{0.1, 0}, {1, 1}}); }),
            ErrorKind::kInvalidParameter);
}

TEST(Invariants, QuantileRoundTripAndHazardIdentity) {
  for (const auto& d : builtin_laws()) {
    for (int i = 1; i < 1000; ++i) {
      const double u = i / 1000.0;
      const double x = d.quantile(u);
      EXPECT_NEAR(d.quantile(d.cdf(x)), x, 1e-9 * std::max(1.0, std::fabs(x)))
          << d.label() << " u=" << u;
      const double identity = d.density(x) / (1.0 - d.cdf(x));
      EXPECT_NEAR(d.hazard(x), identity, 1e-9 * std::max(1.0, identity))
          << d.label() << " x=" << x;
    }
  }
}

TEST(Invariants, CdfMonotoneWithSupportEndpoints) {
  for (const auto& d : builtin_laws()) {
    EXPECT_EQ(d.cdf(d.support_lower()), 0.0) << d.label();
    double prev = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double x = d.quantile(i / 200.0);
      EXPECT_GT(d.cdf(x), prev) << d.label();
      prev = d.cdf(x);
    }
    EXPECT_GT(d.cdf(d.upper_quantile(1e-12)), 1.0 - 1e-11) << d.label();
  }
}

TEST(Invariants, UpperQuantileResolvesTinyTails) {
  EXPECT_NEAR(make_exponential(1).upper_quantile(1e-300), 300 * std::log(10.0), 1e-9);
  EXPECT_NEAR(make_pareto(2, 1).upper_quantile(1e-20), 1e10, 1e-3);
  EXPECT_NEAR(make_uniform(0, 1).upper_quantile(1e-17), 1.0 - 1e-17, 1e-16);
}

TEST(Sampling, ProbabilityIntegralTransformIsUniform) {
  for (const auto& d : {make_uniform(0, 1), make_exponential(1), make_pareto(2, 1)}) {
    std::mt19937_64 gen(20240607);
    std::vector<double> u(1'000'000);
    for (auto& v : u) v = d.cdf(d.sample(gen));
    EXPECT_LT(ks_uniform(std::move(u)), 0.002) << d.label();
  }
}

TEST(Truncation, Examples) {
  const auto t = truncate_below(make_uniform(0, 1), 0.8);
  EXPECT_NEAR(t.cdf(0.9), 0.5, 1e-12);
  EXPECT_EQ(t.cdf(0.8), 0.0);
  const auto e = make_exponential(1);
  const auto te = truncate_below(e, std::log(5.0));
  EXPECT_NEAR(te.cdf(e.quantile(0.9)), 0.5, 1e-12);
  EXPECT_NEAR(te.retained_mass(), 0.2, 1e-15);
}

TEST(Truncation, DegenerateThrows) {
  try {
    truncate_below(make_uniform(0, 1), 1.0);
    FAIL() << "expected degenerate-truncation";
  } catch (const ContestError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateTruncation);
  }
  EXPECT_THROW(truncate_below(make_exponential(1), 40.0), ContestError);
}

TEST(Truncation, RejectionSamplingMatchesTruncatedCdf) {
  const auto d = make_exponential(1);
  const double b = 1.2;
  const auto t = truncate_below(d, b);
  std::mt19937_64 gen(99);
  std::vector<double> u;
  while (u.size() < 100'000) {
    const double x = d.sample(gen);
    if (x >= b) u.push_back(t.cdf(x));
  }
  EXPECT_LT(ks_uniform(std::move(u)), 0.005);
}

TEST(Custom, QuantileFunctionLaw) {
  // Power law on [0, 1]: F(x) = x^2.
  const auto d = make_custom([](double u) { return std::sqrt(u); },
                             [](double x) { return 2 * x; }, 0.0, 1.0);
  EXPECT_EQ(d.family(), Family::kCustom);
  for (double x : {0.1, 0.3, 0.77}) {
    EXPECT_NEAR(d.cdf(x), x * x, 1e-12);
    EXPECT_NEAR(d.hazard(x), 2 * x / (1 - x * x), 1e-9);
  }
}

TEST(Custom, GridLawInterpolatesMonotonically) {
  const auto d = make_custom_from_grid({{0, 0}, {0.25, 1}, {0.5, 1.5}, {1, 4}});
  EXPECT_NEAR(d.quantile(0.25), 1.0, 1e-15);
  EXPECT_NEAR(d.quantile(0.5), 1.5, 1e-15);
  double prev = d.quantile(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double x = d.quantile(i / 1000.0);
    EXPECT_GT(x, prev);
    prev = x;
    EXPECT_NEAR(d.cdf(x), i / 1000.0, 1e-9);
  }
  // Linear grid reproduces the uniform law exactly.
  const auto lin = make_custom_from_grid({{0, 0}, {0.5, 0.5}, {1, 1}});
  EXPECT_NEAR(lin.density(0.3), 1.0, 1e-12);
}

}  // namespace
}  // namespace searchcontest
