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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "searchcontest/error.h"
#include "searchcontest/numerics.h"

namespace searchcontest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDamping = 0.5;
constexpr double kBrTol = 1e-10;
constexpr int kBrMaxIter = 10000;
constexpr int kTraceLength = 16;
constexpr double kNewtonTol = 1e-13;
constexpr int kNewtonMaxIter = 300;
constexpr double kScanTol = 1e-13;
// The payoff-form scan can sit 1e-2 off the true root when continuation
// values fall below double resolution; Newton may move that far.
constexpr double kPolishRadius = 1e-2;
constexpr int kMaxScanRounds = 3;  // k <= 4

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

std::vector<double> difference(const std::vector<double>& a,
                               const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Dense Gaussian elimination with partial pivoting; the systems here have
// k - 1 unknowns.
bool solve_linear(std::vector<std::vector<double>> m, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (!(std::fabs(m[pivot][col]) > 0.0)) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= m[i][c] * rhs[c];
    rhs[i] = s / m[i][i];
  }
  return std::all_of(rhs.begin(), rhs.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

void FiniteHorizonParams::validate() const {
  if (n_players < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_players must be >= 2");
  }
  if (!(std::isfinite(cost_ratio) && cost_ratio >= 0.0)) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "cost ratio must be finite and >= 0");
  }
  if (n_draws < 2) {
    throw ContestError(ErrorKind::kInvalidParameter, "n_draws must be >= 2");
  }
}

OpponentFinalCdf::OpponentFinalCdf(std::vector<double> round_quantiles)
    : round_quantiles_(std::move(round_quantiles)) {
  for (double a : round_quantiles_) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw ContestError(ErrorKind::kInvalidParameter,
                         "round quantiles must lie in [0, 1]");
    }
  }
  knots_ = {0.0, 1.0};
  for (double a : round_quantiles_) {
    if (a > 0.0 && a < 1.0) knots_.push_back(a);
  }
  std::sort(knots_.begin(), knots_.end());
  knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  values_.reserve(knots_.size());
  for (double u : knots_) values_.push_back((*this)(u));
}

double OpponentFinalCdf::operator()(double u) const {
  double total = 0.0;
  double reach = 1.0;  // probability of rejecting every earlier round
  for (double a : round_quantiles_) {
    if (u > a) total += reach * (u - a);
    reach *= a;
  }
  return total + reach * u;
}

double OpponentFinalCdf::inverse(double y) const {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const auto it = std::lower_bound(values_.begin(), values_.end(), y);
  const std::size_t hi = static_cast<std::size_t>(it - values_.begin());
  if (hi == 0) return knots_.front();
  const std::size_t lo = hi - 1;
  const double dv = values_[hi] - values_[lo];
  if (!(dv > 0.0)) return knots_[lo];
  return knots_[lo] + (y - values_[lo]) / dv * (knots_[hi] - knots_[lo]);
}

double OpponentFinalCdf::integrate_power(int power, double lower,
                                         double upper) const {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double l = std::max(knots_[i], lower);
    const double r = std::min(knots_[i + 1], upper);
    if (!(r > l)) continue;
    const double hl = l == knots_[i] ? values_[i] : (*this)(l);
    const double hr = r == knots_[i + 1] ? values_[i + 1] : (*this)(r);
    const double slope = (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
    if (slope > 0.0) {
      total += (std::pow(hr, power + 1) - std::pow(hl, power + 1)) /
               ((power + 1) * slope);
    } else {
      total += std::pow(hl, power) * (r - l);
    }
  }
  return total;
}

double two_draw_cost_ratio(int n_players, double a) {
  const int n = n_players;
  return (1.0 + std::pow(a, 2 * n - 1)) / (n * (1.0 + a)) -
         std::pow(a, 2 * n - 2);
}

BestResponse best_response(const std::vector<double>& opponent, int n_players,
                           double cost_ratio) {
  const OpponentFinalCdf h(opponent);
  const int power = n_players - 1;
  const std::size_t rounds = opponent.size();
  BestResponse br;
  br.round_quantiles.assign(rounds, 0.0);
  br.continuation_values.assign(rounds, 0.0);
  const double full = h.integrate_power(power);
  double value = -cost_ratio + full;  // entering the forced last round
  for (std::size_t j = rounds; j-- > 0;) {
    br.continuation_values[j] = value;
    if (value > 0.0) {
      const double cut = h.inverse(std::pow(value, 1.0 / power));
      br.round_quantiles[j] = cut;
      value = -cost_ratio + value * cut + h.integrate_power(power, cut);
    } else {
      br.round_quantiles[j] = 0.0;
      value = -cost_ratio + full;
    }
  }
  br.ex_ante_value = value;
  return br;
}

std::vector<double> indifference_residuals(const std::vector<double>& a,
                                           int n_players, double cost_ratio) {
  const OpponentFinalCdf h(a);
  const BestResponse br = best_response(a, n_players, cost_ratio);
  std::vector<double> r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    r[j] = std::pow(h(a[j]), n_players - 1) -
           std::max(br.continuation_values[j], 0.0);
  }
  return r;
}

namespace {

struct Solver {
  int n;
  double cr;
  std::size_t rounds;

  // Payoff-form indifference conditions. The scan selects branches on
  // these; Newton polishes on root_residual.
  std::vector<double> residual(const std::vector<double>& a) const {
    return indifference_residuals(a, n, cr);
  }

  // Indifference conditions, conditioned for Newton. The last round keeps
  // the payoff form V_k - h(a_k)^p, whose gradient comes from the O(1)
  // integral in V_k. Earlier rounds use win-probability units
  // h(a_j) - V_{j+1}^{1/p}, with V_{j+1} = h(a_k)^p + D_{j+1} and
  // D_j = a_j V_{j+1} - int_0^{a_j} h^p. This never forms V_k - c style
  // differences, so continuation values far below machine epsilon survive.
  std::vector<double> root_residual(const std::vector<double>& a) const {
    const OpponentFinalCdf h(a);
    const int p = n - 1;
    const std::size_t last = rounds - 1;
    const double v_last = h.integrate_power(p) - cr;
    const double h_last = h(a[last]);
    std::vector<double> r(rounds);
    // Continuous across V_k = 0. For V_k < 0 the only root is h(a_k) = 0,
    // the accept-everything corner.
    const double anchor = std::pow(h_last, p);
    r[last] = v_last >= 0.0 ? v_last - anchor : v_last * h_last - anchor;
    double next = anchor;  // V_{j+1}
    for (std::size_t j = last; j-- > 0;) {
      next = anchor + a[j + 1] * next - h.integrate_power(p, 0.0, a[j + 1]);
      r[j] = h(a[j]) - std::pow(std::max(next, 0.0), 1.0 / p);
    }
    return r;
  }

  std::vector<double> br_gap(const std::vector<double>& a) const {
    return difference(best_response(a, n, cr).round_quantiles, a);
  }

  // Damped best response; returns the fixed point on convergence.
  std::optional<std::vector<double>> damped(std::vector<double> a,
                                            int max_iter, int* iterations,
                                            std::vector<double>* trace) const {
    for (int it = 0; it < max_iter; ++it) {
      const std::vector<double> gap = br_gap(a);
      const double norm = sup_norm(gap);
      if (trace) {
        trace->push_back(norm);
        if (trace->size() > kTraceLength) trace->erase(trace->begin());
      }
      if (!std::isfinite(norm)) return std::nullopt;
      if (norm < kBrTol) {
        if (iterations) *iterations = it;
        return a;
      }
      for (std::size_t j = 0; j < rounds; ++j) a[j] += kDamping * gap[j];
    }
    if (iterations) *iterations = max_iter;
    return std::nullopt;
  }

  // Newton with backtracking on the indifference residuals.
  std::optional<std::vector<double>> newton(std::vector<double> a,
                                            int* iterations) const {
    std::vector<double> r = root_residual(a);
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      const double norm = sup_norm(r);
      if (norm < kNewtonTol) {
        if (iterations) *iterations = it;
        return a;
      }
      std::vector<std::vector<double>> jac(rounds, std::vector<double>(rounds));
      for (std::size_t i = 0; i < rounds; ++i) {
        const double step = 1e-7;
        std::vector<double> up = a, dn = a;
        up[i] = std::min(1.0, a[i] + step);
        dn[i] = std::max(0.0, a[i] - step);
        const auto ru = root_residual(up);
        const auto rd = root_residual(dn);
        for (std::size_t j = 0; j < rounds; ++j) {
          jac[j][i] = (ru[j] - rd[j]) / (up[i] - dn[i]);
        }
      }
      std::vector<double> delta = r;
      for (double& x : delta) x = -x;
      if (!solve_linear(jac, delta)) return std::nullopt;
      double t = 1.0;
      bool moved = false;
      while (t > 1e-10) {
        std::vector<double> trial = a;
        for (std::size_t j = 0; j < rounds; ++j) {
          trial[j] = std::clamp(a[j] + t * delta[j], 0.0, 1.0 - 1e-15);
        }
        const auto rt = root_residual(trial);
        if (sup_norm(rt) < (1.0 - 1e-4 * t) * norm) {
          moved = true;
          if (sup_norm(difference(trial, a)) < 1e-16 && sup_norm(rt) > kNewtonTol) {
            return std::nullopt;
          }
          a = std::move(trial);
          r = rt;
          break;
        }
        t *= 0.5;
      }
      if (!moved) return std::nullopt;
    }
    return std::nullopt;
  }

  // Solves residuals [level, rounds) = 0 for a[level..] with a[0..level)
  // held fixed, by scanning then bisecting one coordinate per level. Level
  // 0 yields every root found on the scan grid.
  bool nested(std::vector<double>& a, std::size_t level) const {
    if (level == rounds) return true;
    const int grid_points = rounds <= 2 ? 128 : 48;
    auto eval = [&](double x) {
      a[level] = x;
      if (!nested(a, level + 1)) return kNaN;
      return residual(a)[level];
    };
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i) {
      grid.push_back(static_cast<double>(i) / grid_points);
    }
    grid.push_back(1.0 - 1e-12);
    const auto brackets = numerics::sign_change_brackets(eval, grid);
    if (brackets.empty()) return false;
    const auto [lo, hi] = brackets.front();
    const double root = lo == hi ? lo : numerics::bisect(eval, lo, hi, kScanTol);
    eval(root);
    return std::isfinite(a[level]);
  }

  std::vector<std::vector<double>> nested_all_roots() const {
    // Same as nested() at level 0 but keeps every outer bracket.
    std::vector<std::vector<double>> roots;
    std::vector<double> a(rounds, 0.0);
    auto eval = [&](double x) {
      a[0] = x;
      if (!nested(a, 1)) return kNaN;
      return residual(a)[0];
    };
    const int grid_points = rounds <= 1 ? 512 : (rounds == 2 ? 128 : 48);
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i) {
      grid.push_back(static_cast<double>(i) / grid_points);
    }
    grid.push_back(1.0 - 1e-12);
    for (const auto& [lo, hi] : numerics::sign_change_brackets(eval, grid)) {
      const double root = lo == hi ? lo : numerics::bisect(eval, lo, hi, kScanTol);
      eval(root);
      roots.push_back(a);
    }
    return roots;
  }
};

void fill_diagnostics(FiniteHorizonEquilibrium& eq, int n, double cr) {
  const BestResponse br = best_response(eq.round_quantiles, n, cr);
  eq.continuation_values = br.continuation_values;
  eq.ex_ante_value = br.ex_ante_value;
  eq.max_residual = sup_norm(indifference_residuals(eq.round_quantiles, n, cr));
}

bool attracts_best_response(const Solver& s, const std::vector<double>& root) {
  std::vector<double> start = root;
  for (double& x : start) x = std::clamp(x + 1e-6, 0.0, 1.0);
  const auto back = s.damped(start, 3000, nullptr, nullptr);
  return back && sup_norm(difference(*back, root)) < 1e-7;
}

bool is_new(const std::vector<std::vector<double>>& known,
            const std::vector<double>& candidate) {
  return std::none_of(known.begin(), known.end(), [&](const auto& k) {
    return sup_norm(difference(k, candidate)) < 1e-6;
  });
}

}  // namespace

FiniteHorizonEquilibrium solve_two_draw(int n_players, double cost_ratio) {
  FiniteHorizonParams{n_players, cost_ratio, 2}.validate();
  auto f = [&](double a) { return two_draw_cost_ratio(n_players, a) - cost_ratio; };
  std::vector<double> grid;
  constexpr int kGrid = 2000;
  for (int i = 0; i < kGrid; ++i) grid.push_back(static_cast<double>(i) / kGrid);
  grid.push_back(1.0);
  std::vector<double> roots;
  for (const auto& [lo, hi] : numerics::sign_change_brackets(f, grid)) {
    const double root = lo == hi ? lo : numerics::solve_bracketed(f, lo, hi);
    if (root < 1.0) roots.push_back(root);
  }
  FiniteHorizonEquilibrium eq;
  eq.method = "closed-form";
  if (roots.empty()) return eq;
  eq.exists = true;
  eq.round_quantiles = {roots.front()};
  for (std::size_t i = 1; i < roots.size(); ++i) {
    eq.alternative_solutions.push_back({roots[i]});
  }
  fill_diagnostics(eq, n_players, cost_ratio);
  const Solver s{n_players, cost_ratio, 1};
  eq.br_stable = attracts_best_response(s, eq.round_quantiles);
  return eq;
}

FiniteHorizonEquilibrium solve_k_draw(const FiniteHorizonParams& params) {
  params.validate();
  const int n = params.n_players;
  const double cr = params.cost_ratio;
  const std::size_t rounds = static_cast<std::size_t>(params.n_draws - 1);
  const Solver s{n, cr, rounds};

  double seed = 0.5;
  if (rounds > 1) {
    const auto two = solve_two_draw(n, cr);
    if (two.exists) seed = two.round_quantiles.front();
  }

  FiniteHorizonEquilibrium eq;
  int iterations = 0;
  if (auto fixed = s.damped(std::vector<double>(rounds, seed), kBrMaxIter,
                            &iterations, &eq.trace)) {
    eq.exists = true;
    eq.method = "best-response";
    eq.iterations = iterations;
    eq.br_stable = true;
    // Polish to the indifference conditions.
    int polish = 0;
    if (auto refined = s.newton(*fixed, &polish);
        refined && sup_norm(difference(*refined, *fixed)) < 1e-8) {
      eq.round_quantiles = *refined;
    } else {
      eq.round_quantiles = *fixed;
    }
  } else if (rounds <= kMaxScanRounds) {
    const auto roots = s.nested_all_roots();
    if (!roots.empty()) {
      eq.exists = true;
      eq.method = "nested-scan";
      eq.iterations = iterations;
      eq.round_quantiles = roots.front();
      int polish = 0;
      if (auto refined = s.newton(roots.front(), &polish);
          refined && sup_norm(difference(*refined, roots.front())) < kPolishRadius) {
        eq.round_quantiles = *refined;
      }
      for (std::size_t i = 1; i < roots.size(); ++i) {
        eq.alternative_solutions.push_back(roots[i]);
      }
      eq.br_stable = attracts_best_response(s, eq.round_quantiles);
    }
  }

  // Multi-start Newton: primary fallback beyond the scan range, and a
  // uniqueness probe otherwise.
  for (double start : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    int newton_iters = 0;
    const auto root = s.newton(std::vector<double>(rounds, start), &newton_iters);
    if (!root) continue;
    if (!eq.exists) {
      eq.exists = true;
      eq.method = "newton";
      eq.iterations = newton_iters;
      eq.round_quantiles = *root;
      eq.br_stable = attracts_best_response(s, *root);
      continue;
    }
    std::vector<std::vector<double>> known = eq.alternative_solutions;
    known.push_back(eq.round_quantiles);
    // Alternatives must satisfy the indifference conditions in relative
    // terms; the zero-payoff manifold otherwise yields spurious roots.
    const auto br = best_response(*root, n, cr);
    const OpponentFinalCdf h(*root);
    bool sharp = true;
    for (std::size_t j = 0; j < rounds; ++j) {
      const double lhs = std::pow(h((*root)[j]), n - 1);
      const double rhs = std::max(br.continuation_values[j], 0.0);
      if (std::fabs(lhs - rhs) > 1e-6 * std::max(lhs, rhs) + 1e-300) sharp = false;
    }
    if (sharp && is_new(known, *root)) eq.alternative_solutions.push_back(*root);
  }

  if (!eq.exists) {
    if (rounds > kMaxScanRounds) {
      throw ContestError(ErrorKind::kNumericFailure,
                         "k-draw fixed point did not converge; last BR gaps "
                         "recorded in the trace");
    }
    eq.method = "none";
    return eq;
  }
  fill_diagnostics(eq, n, cr);
  return eq;
}

ThresholdProfile threshold_profile(int n_draws, double cost_ratio, int n_min,
                                   int n_max) {
  if (n_min < 2 || n_max < n_min) {
    throw ContestError(ErrorKind::kInvalidParameter,
                       "player range must satisfy 2 <= n_min <= n_max");
  }
  ThresholdProfile profile;
  profile.n_draws = n_draws;
  profile.cost_ratio = cost_ratio;
  double best = -1.0;
  for (int n = n_min; n <= n_max; ++n) {
    ThresholdProfileRow row;
    row.n_players = n;
    row.equilibrium = n_draws == 2 ? solve_two_draw(n, cost_ratio)
                                   : solve_k_draw({n, cost_ratio, n_draws});
    if (row.equilibrium.exists) {
      const double a1 = row.equilibrium.round_quantiles.front();
      if (a1 > best) {
        best = a1;
        profile.peak_n = n;
      }
    } else if (!profile.existence_frontier) {
      profile.existence_frontier = n;
    }
    profile.rows.push_back(std::move(row));
  }
  return profile;
}

}  // namespace searchcontest
