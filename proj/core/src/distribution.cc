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
#include <sstream>

#include "searchcontest/error.h"

namespace searchcontest {
namespace internal {

class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  virtual double lower() const = 0;
  virtual double upper() const = 0;
  virtual double cdf(double x) const = 0;
  virtual double survival(double x) const { return 1.0 - cdf(x); }
  virtual double density(double x) const = 0;
  virtual double quantile(double u) const = 0;
  virtual double upper_quantile(double tail) const {
    return quantile(1.0 - tail);
  }
  virtual double hazard(double x) const {
    const double s = survival(x);
    if (s <= 0.0) return std::numeric_limits<double>::infinity();
    return density(x) / s;
  }
  virtual bool finite_mean() const { return true; }
  virtual Family family() const = 0;
  virtual std::string label() const = 0;

  std::vector<double> params;
  std::vector<std::pair<double, double>> grid;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_probability(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "probability argument outside [0, 1]");
  }
}

std::string format_label(const std::string& family,
                         const std::vector<double>& params) {
  std::ostringstream os;
  os.precision(15);
  os << family << ':';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) os << ',';
    os << params[i];
  }
  return os.str();
}

class UniformModel final : public DistributionModel {
 public:
  UniformModel(double lo, double hi) : lo_(lo), hi_(hi), width_(hi - lo) {
    params = {lo, hi};
  }
  double lower() const override { return lo_; }
  double upper() const override { return hi_; }
  double cdf(double x) const override {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return (x - lo_) / width_;
  }
  double survival(double x) const override {
    if (x <= lo_) return 1.0;
    if (x >= hi_) return 0.0;
    return (hi_ - x) / width_;
  }
  double density(double x) const override {
    return (x < lo_ || x > hi_) ? 0.0 : 1.0 / width_;
  }
  double quantile(double u) const override {
    require_probability(u);
    return lo_ + u * width_;
  }
  double upper_quantile(double tail) const override {
    require_probability(tail);
    return hi_ - tail * width_;
  }
  double hazard(double x) const override {
    if (x < lo_) return 0.0;
    if (x >= hi_) return kInf;
    return 1.0 / (hi_ - x);
  }
  Family family() const override { return Family::kUniform; }
  std::string label() const override { return format_label("uniform", params); }

 private:
  double lo_, hi_, width_;
};

class ExponentialModel final : public DistributionModel {
 public:
  explicit ExponentialModel(double rate) : rate_(rate) { params = {rate}; }
  double lower() const override { return 0.0; }
  double upper() const override { return kInf; }
  double cdf(double x) const override {
    return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
  }
  double survival(double x) const override {
    return x <= 0.0 ? 1.0 : std::exp(-rate_ * x);
  }
  double density(double x) const override {
    return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
  }
  double quantile(double u) const override {
    require_probability(u);
    return -std::log1p(-u) / rate_;
  }
  double upper_quantile(double tail) const override {
    require_probability(tail);
    return -std::log(tail) / rate_;
  }
  double hazard(double x) const override { return x < 0.0 ? 0.0 : rate_; }
  Family family() const override { return Family::kExponential; }
  std::string label() const override {
    return format_label("exponential", params);
  }

 private:
  double rate_;
};

class ParetoModel final : public DistributionModel {
 public:
  ParetoModel(double shape, double scale) : shape_(shape), scale_(scale) {
    params = {shape, scale};
  }
  double lower() const override { return scale_; }
  double upper() const override { return kInf; }
  double cdf(double x) const override {
    return x <= scale_ ? 0.0 : -std::expm1(shape_ * std::log(scale_ / x));
  }
  double survival(double x) const override {
    return x <= scale_ ? 1.0 : std::pow(scale_ / x, shape_);
  }
  double density(double x) const override {
    if (x < scale_) return 0.0;
    return shape_ / x * std::pow(scale_ / x, shape_);
  }
  double quantile(double u) const override {
    require_probability(u);
    return scale_ * std::exp(-std::log1p(-u) / shape_);
  }
  double upper_quantile(double tail) const override {
    require_probability(tail);
    return scale_ * std::pow(tail, -1.0 / shape_);
  }
  double hazard(double x) const override {
    return x < scale_ ? 0.0 : shape_ / x;
  }
  bool finite_mean() const override { return shape_ > 1.0; }
  Family family() const override { return Family::kPareto; }
  std::string label() const override { return format_label("pareto", params); }

 private:
  double shape_, scale_;
};

// Quantile-primitive law; the CDF comes from bisection on the quantile.
class QuantileModel : public DistributionModel {
 public:
  QuantileModel(std::function<double(double)> q, std::function<double(double)> f,
                double lo, double hi)
      : q_(std::move(q)), f_(std::move(f)), lo_(lo), hi_(hi) {}

  double lower() const override { return lo_; }
  double upper() const override { return hi_; }
  double cdf(double x) const override {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return invert(x, 0.0, 1.0);
  }
  double density(double x) const override {
    return (x < lo_ || x > hi_) ? 0.0 : f_(x);
  }
  double quantile(double u) const override {
    require_probability(u);
    if (u == 0.0) return lo_;
    if (u == 1.0) return hi_;
    return q_(u);
  }
  Family family() const override { return Family::kCustom; }
  std::string label() const override { return "custom"; }

 protected:
  // Bisection for q(u) = x on [ulo, uhi]; stops at 1e-12 in probability
  // and then polishes to the limit of double resolution.
  double invert(double x, double ulo, double uhi) const {
    while (uhi - ulo > 1e-12) {
      const double mid = 0.5 * (ulo + uhi);
      (q_(mid) < x ? ulo : uhi) = mid;
    }
    for (int i = 0; i < 64; ++i) {
      const double mid = 0.5 * (ulo + uhi);
      if (mid <= ulo || mid >= uhi) break;
      (q_(mid) < x ? ulo : uhi) = mid;
    }
    return 0.5 * (ulo + uhi);
  }

  std::function<double(double)> q_;
  std::function<double(double)> f_;
  double lo_, hi_;
};

// Monotone cubic Hermite interpolant of quantile knots.
class GridModel final : public QuantileModel {
 public:
  explicit GridModel(std::vector<std::pair<double, double>> knots)
      : QuantileModel({}, {}, knots.front().second, knots.back().second) {
    grid = std::move(knots);
    const std::size_t n = grid.size();
    std::vector<double> h(n - 1), secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = grid[i + 1].first - grid[i].first;
      secant[i] = (grid[i + 1].second - grid[i].second) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_.front() = secant.front();
    slope_.back() = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      slope_[i] = (w1 + w2) / (w1 / secant[i - 1] + w2 / secant[i]);
    }
    q_ = [this](double u) { return eval(u); };
    f_ = [this](double x) {
      const double d = derivative(cdf(x));
      return d > 0.0 ? 1.0 / d : kInf;
    };
  }

  double cdf(double x) const override {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    const std::size_t i = segment_for_value(x);
    return invert(x, grid[i].first, grid[i + 1].first);
  }

 private:
  std::size_t segment_for_u(double u) const {
    auto it = std::upper_bound(
        grid.begin(), grid.end(), u,
        [](double v, const std::pair<double, double>& k) { return v < k.first; });
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    i = i == 0 ? 0 : i - 1;
    return std::min(i, grid.size() - 2);
  }
  std::size_t segment_for_value(double x) const {
    auto it = std::upper_bound(
        grid.begin(), grid.end(), x,
        [](double v, const std::pair<double, double>& k) { return v < k.second; });
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    i = i == 0 ? 0 : i - 1;
    return std::min(i, grid.size() - 2);
  }
  double eval(double u) const {
    const std::size_t i = segment_for_u(u);
    const double h = grid[i + 1].first - grid[i].first;
    const double t = (u - grid[i].first) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * grid[i].second +
           (t3 - 2 * t2 + t) * h * slope_[i] +
           (-2 * t3 + 3 * t2) * grid[i + 1].second +
           (t3 - t2) * h * slope_[i + 1];
  }
  double derivative(double u) const {
    const std::size_t i = segment_for_u(u);
    const double h = grid[i + 1].first - grid[i].first;
    const double t = (u - grid[i].first) / h;
    const double t2 = t * t;
    return (6 * t2 - 6 * t) / h * grid[i].second +
           (3 * t2 - 4 * t + 1) * slope_[i] +
           (-6 * t2 + 6 * t) / h * grid[i + 1].second +
           (3 * t2 - 2 * t) * slope_[i + 1];
  }

  std::vector<double> slope_;
};

}  // namespace
}  // namespace internal

double Distribution::support_lower() const noexcept { return model_->lower(); }
double Distribution::support_upper() const noexcept { return model_->upper(); }
double Distribution::cdf(double x) const { return model_->cdf(x); }
double Distribution::survival(double x) const { return model_->survival(x); }
double Distribution::density(double x) const { return model_->density(x); }
double Distribution::quantile(double u) const { return model_->quantile(u); }
double Distribution::upper_quantile(double tail) const {
  return model_->upper_quantile(tail);
}
double Distribution::hazard(double x) const { return model_->hazard(x); }
bool Distribution::has_finite_mean() const noexcept {
  return model_->finite_mean();
}
Family Distribution::family() const noexcept { return model_->family(); }
const std::vector<double>& Distribution::parameters() const noexcept {
  return model_->params;
}
const std::vector<std::pair<double, double>>& Distribution::quantile_grid()
    const noexcept {
  return model_->grid;
}
std::string Distribution::label() const { return model_->label(); }

Distribution make_uniform(double lo, double hi) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "uniform requires finite lo < hi");
  }
  return Distribution(std::make_shared<internal::UniformModel>(lo, hi));
}

Distribution make_exponential(double rate) {
  if (!(std::isfinite(rate) && rate > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "exponential requires rate > 0");
  }
  return Distribution(std::make_shared<internal::ExponentialModel>(rate));
}

Distribution make_pareto(double shape, double scale) {
  if (!(std::isfinite(shape) && std::isfinite(scale) && shape > 0.0 &&
        scale > 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "pareto requires shape > 0 and scale > 0");
  }
  return Distribution(std::make_shared<internal::ParetoModel>(shape, scale));
}

Distribution make_custom(std::function<double(double)> quantile,
                         std::function<double(double)> density, double lower,
                         double upper) {
  if (!quantile || !density || !std::isfinite(lower) || !(lower < upper)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "custom law needs quantile, density and lower < upper");
  }
  return Distribution(std::make_shared<internal::QuantileModel>(
      std::move(quantile), std::move(density), lower, upper));
}

Distribution make_custom_from_grid(
    std::vector<std::pair<double, double>> quantile_grid) {
  if (quantile_grid.size() < 2) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "quantile grid needs at least two knots");
  }
  if (quantile_grid.front().first != 0.0 || quantile_grid.back().first != 1.0) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "quantile grid must start at u=0 and end at u=1");
  }
  for (std::size_t i = 0; i < quantile_grid.size(); ++i) {
    const auto [u, x] = quantile_grid[i];
    if (!std::isfinite(u) || !std::isfinite(x)) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "quantile grid knots must be finite");
    }
    if (i > 0 && !(u > quantile_grid[i - 1].first &&
                   x > quantile_grid[i - 1].second)) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "quantile grid must be strictly increasing");
    }
  }
  return Distribution(
      std::make_shared<internal::GridModel>(std::move(quantile_grid)));
}

double TruncatedDistribution::cdf(double x) const {
  if (x <= lower_) return 0.0;
  const double s = base_.survival(x);
  return std::clamp((retained_ - s) / retained_, 0.0, 1.0);
}

double TruncatedDistribution::density(double x) const {
  if (x < lower_) return 0.0;
  return base_.density(x) / retained_;
}

double TruncatedDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "probability argument outside [0, 1]");
  }
  if (u == 0.0) return lower_;
  return base_.upper_quantile(retained_ * (1.0 - u));
}

double TruncatedDistribution::upper_quantile(double tail) const {
  if (!(tail >= 0.0 && tail <= 1.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "probability argument outside [0, 1]");
  }
  if (tail == 1.0) return lower_;
  return base_.upper_quantile(retained_ * tail);
}

TruncatedDistribution truncate_below(const Distribution& d, double b) {
  const double lower = std::max(b, d.support_lower());
  const double retained = d.survival(lower);
  if (!(retained > 1e-12)) {
    throw ContestError(ErrorKind::kDegenerateTruncation,
                       "truncation point leaves no probability mass");
  }
  return TruncatedDistribution(d, lower, retained);
}

}  // namespace searchcontest
