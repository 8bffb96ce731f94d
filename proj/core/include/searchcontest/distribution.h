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

#ifndef SEARCHCONTEST_DISTRIBUTION_H_
#define SEARCHCONTEST_DISTRIBUTION_H_

#include <concepts>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace searchcontest {

enum class Family { kUniform, kExponential, kPareto, kCustom };

namespace internal {
class DistributionModel;
}  // namespace internal

// Maps 64 random bits onto the open interval (0, 1) at 53-bit resolution.
inline double bits_to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// A continuous distribution with a strictly positive density on its
// support [support_lower(), support_upper()]. The upper end may be +inf.
//
// Values are cheap to copy (shared immutable state) and safe to use from
// any number of threads. Sampling draws from an explicit generator; there
// is no hidden random state.
class Distribution {
 public:
  double support_lower() const noexcept;
  double support_upper() const noexcept;
  bool bounded_above() const noexcept {
    return support_upper() < std::numeric_limits<double>::infinity();
  }

  double cdf(double x) const;
  // 1 - cdf(x), evaluated without cancellation for the built-in families.
  double survival(double x) const;
  double density(double x) const;
  double quantile(double u) const;
  // quantile(1 - tail), accurate for tiny tail probabilities.
  double upper_quantile(double tail) const;
  // density / survival; +inf where the survival function vanishes.
  double hazard(double x) const;

  // Inverse-transform sample from a uniform variate in (0, 1).
  double transform(double uniform) const { return quantile(uniform); }

  template <std::uniform_random_bit_generator G>
  double sample(G& gen) const {
    if constexpr (G::min() == 0 &&
                  G::max() == std::numeric_limits<std::uint64_t>::max()) {
      return transform(bits_to_open_unit(gen()));
    } else {
      double u = std::generate_canonical<double, 53>(gen);
      if (u <= 0.0) u = 0x1.0p-54;
      return transform(u);
    }
  }

  // False only for Pareto laws with shape <= 1, whose mean diverges.
  bool has_finite_mean() const noexcept;

  Family family() const noexcept;
  // Family parameters in construction order: uniform (lo, hi),
  // exponential (rate), pareto (shape, scale); empty for custom laws.
  const std::vector<double>& parameters() const noexcept;
  // (u, x) knots of a grid-defined custom law; empty otherwise.
  const std::vector<std::pair<double, double>>& quantile_grid() const noexcept;
  // Short human-readable tag such as "pareto:2,1".
  std::string label() const;

 private:
  explicit Distribution(std::shared_ptr<const internal::DistributionModel> m)
      : model_(std::move(m)) {}

  std::shared_ptr<const internal::DistributionModel> model_;

  friend Distribution make_uniform(double lo, double hi);
  friend Distribution make_exponential(double rate);
  friend Distribution make_pareto(double shape, double scale);
  friend Distribution make_custom(std::function<double(double)> quantile,
                                  std::function<double(double)> density,
                                  double lower, double upper);
  friend Distribution make_custom_from_grid(
      std::vector<std::pair<double, double>> quantile_grid);
};

// Uniform on [lo, hi]. Throws invalid-parameter unless lo < hi.
Distribution make_uniform(double lo, double hi);
// Exponential on [0, inf) with the given rate > 0.
Distribution make_exponential(double rate);
// Pareto on [scale, inf): cdf(x) = 1 - (scale / x)^shape.
Distribution make_pareto(double shape, double scale);

// User-defined law from a quantile function and its density. The CDF is
// recovered by bisection on the quantile to 1e-12 in probability. The
// quantile must be strictly increasing on [0, 1] with quantile(0) = lower
// and quantile(1) = upper (upper may be +inf).
Distribution make_custom(std::function<double(double)> quantile,
                         std::function<double(double)> density, double lower,
                         double upper);

// User-defined law from quantile knots (u, x): u runs from 0 to 1, both
// coordinates strictly increasing, x finite. The quantile is the monotone
// piecewise-cubic (PCHIP) interpolant, so the density is continuous.
Distribution make_custom_from_grid(
    std::vector<std::pair<double, double>> quantile_grid);

// F conditioned on X >= lower: cdf(x) = (F(x) - F(b)) / (1 - F(b)).
class TruncatedDistribution {
 public:
  const Distribution& base() const noexcept { return base_; }
  double lower() const noexcept { return lower_; }
  // 1 - F(b), the base mass retained by the truncation.
  double retained_mass() const noexcept { return retained_; }

  double cdf(double x) const;
  double density(double x) const;
  double quantile(double u) const;
  double upper_quantile(double tail) const;

  template <std::uniform_random_bit_generator G>
  double sample(G& gen) const {
    return base_.upper_quantile(retained_ *
                                (1.0 - std::generate_canonical<double, 53>(gen)));
  }

 private:
  TruncatedDistribution(Distribution base, double lower, double retained)
      : base_(std::move(base)), lower_(lower), retained_(retained) {}

  Distribution base_;
  double lower_;
  double retained_;

  friend TruncatedDistribution truncate_below(const Distribution& d, double b);
};

// Throws degenerate-truncation when F(b) >= 1 - 1e-12.
TruncatedDistribution truncate_below(const Distribution& d, double b);

}  // namespace searchcontest

#endif  // SEARCHCONTEST_DISTRIBUTION_H_
