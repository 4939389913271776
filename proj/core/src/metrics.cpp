#include "eden/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eden {

std::vector<std::string> check_params(const AnalyticParams& p) {
  std::vector<std::string> errors;
  if (p.required_actions < 0) errors.push_back("required_actions must be >= 0");
  if (p.expected_moves < 0) errors.push_back("expected_moves must be >= 0");
  const auto stages = static_cast<std::size_t>(estimate_ttmn(std::max(0.0, p.required_actions), std::max(0.0, p.expected_moves)));
  if (p.p_required.size() != stages || p.p_useless.size() != stages) {
    errors.push_back("probability lists must have ceil(g + e) = " + std::to_string(stages) + " entries");
  }
  for (std::size_t j = 0; j < std::min(p.p_required.size(), p.p_useless.size()); ++j) {
    const double ps = p.p_required[j];
    const double pu = p.p_useless[j];
    if (!(ps > 0 && ps <= 1)) errors.push_back("p_required[" + std::to_string(j) + "] must lie in (0, 1]");
    if (!(pu >= 0 && pu < 1)) errors.push_back("p_useless[" + std::to_string(j) + "] must lie in [0, 1)");
    if (ps + pu > 1 + 1e-12) errors.push_back("p_required + p_useless exceeds 1 at stage " + std::to_string(j));
  }
  if (!(p.threshold >= 0.9 && p.threshold < 1)) errors.push_back("threshold must lie in [0.9, 1)");
  return errors;
}

int estimate_ttmn(double required_actions, double expected_moves) {
  return static_cast<int>(std::ceil(required_actions + expected_moves));
}

std::vector<double> first_completion_cdf_series(const AnalyticParams& params, int max_t) {
  const std::size_t stages = params.p_required.size();
  std::vector<double> cdf(static_cast<std::size_t>(std::max(max_t, 0)) + 1, 0.0);
  if (stages == 0) {
    std::fill(cdf.begin(), cdf.end(), 1.0);
    return cdf;
  }
  // mass[j]: probability of sitting in stage j (j stages done) and not yet finished
  std::vector<double> mass(stages, 0.0);
  std::vector<double> next(stages, 0.0);
  mass[0] = 1.0;
  double done = 0;
  for (int t = 1; t <= max_t; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t j = 0; j < stages; ++j) {
      if (mass[j] == 0) continue;
      next[j] += mass[j] * params.p_useless[j];
      const double advance = mass[j] * params.p_required[j];
      if (j + 1 == stages) {
        done += advance;
      } else {
        next[j + 1] += advance;
      }
    }
    mass.swap(next);
    cdf[static_cast<std::size_t>(t)] = std::min(1.0, done);
  }
  return cdf;
}

double first_completion_cdf(const AnalyticParams& params, int t) {
  if (t < 0) return 0;
  return first_completion_cdf_series(params, t).back();
}

double cdf_limit(const AnalyticParams& params) {
  double limit = 1;
  for (std::size_t j = 0; j < params.p_required.size(); ++j) {
    limit *= params.p_required[j] / (1 - params.p_useless[j]);
  }
  return std::min(1.0, limit);
}

int ttmx_analytic(const AnalyticParams& params, int bound) {
  if (auto errors = check_params(params); !errors.empty()) throw std::invalid_argument(errors.front());
  const double th = params.threshold;
  if (cdf_limit(params) < th) {
    throw UnreachableThreshold("cdf limit " + std::to_string(cdf_limit(params)) + " is below threshold " +
                               std::to_string(th));
  }
  // Incremental version of first_completion_cdf_series that stops early.
  const std::size_t stages = params.p_required.size();
  if (stages == 0) return 0;
  std::vector<double> mass(stages, 0.0), next(stages, 0.0);
  mass[0] = 1.0;
  double done = 0;
  for (int t = 1; t <= bound; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t j = 0; j < stages; ++j) {
      next[j] += mass[j] * params.p_useless[j];
      const double advance = mass[j] * params.p_required[j];
      if (j + 1 == stages) {
        done += advance;
      } else {
        next[j + 1] += advance;
      }
    }
    mass.swap(next);
    if (done >= th) return t;
  }
  throw UnreachableThreshold("threshold not reached within " + std::to_string(bound) + " steps");
}

GoalLadder goal_ladder(int ttmn, int ttmx, int n, std::optional<std::vector<int>> breakpoints) {
  if (n < 2 || n > ttmx - ttmn) {
    throw std::invalid_argument("goal count must satisfy 2 <= n <= ttmx - ttmn (n=" + std::to_string(n) + ", span " +
                                std::to_string(ttmx - ttmn) + ")");
  }
  GoalLadder ladder;
  if (breakpoints) {
    const auto& a = *breakpoints;
    if (a.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("breakpoints must have n + 1 entries");
    if (a.front() != ttmn || a.back() != ttmx) throw std::invalid_argument("breakpoints must run from ttmn to ttmx");
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (a[i] <= a[i - 1]) throw std::invalid_argument("breakpoints must be strictly increasing");
    }
    ladder.breakpoints = a;
  } else {
    for (int i = 0; i <= n; ++i) ladder.breakpoints.push_back(ttmn + i * (ttmx - ttmn) / n);
  }
  for (int i = 0; i < n; ++i) ladder.goals.push_back({i + 1, ladder.breakpoints[static_cast<std::size_t>(i)]});
  return ladder;
}

double histogram_entropy(std::span<const double> probabilities) {
  double h = 0;
  for (double p : probabilities) {
    if (p > 0) h -= p * std::log(p);
  }
  return h;
}

double pic_estimate(const std::vector<std::vector<double>>& samples, int bins) {
  if (samples.size() < 2) throw std::invalid_argument("pic_estimate needs at least two policies");
  if (bins < 2) throw std::invalid_argument("pic_estimate needs at least two bins");
  double lo = samples.front().empty() ? 0 : samples.front().front();
  double hi = lo;
  for (const auto& s : samples) {
    if (s.empty()) throw std::invalid_argument("every policy needs at least one reward sample");
    for (double r : s) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (!(hi > lo)) return 0;
  const double width = hi - lo;
  const auto b = static_cast<std::size_t>(bins);
  std::vector<double> pooled(b, 0.0), cond(b, 0.0);
  double conditional = 0;
  const double weight = 1.0 / static_cast<double>(samples.size());
  for (const auto& s : samples) {
    std::fill(cond.begin(), cond.end(), 0.0);
    const double unit = 1.0 / static_cast<double>(s.size());
    for (double r : s) {
      auto k = static_cast<std::size_t>(std::floor((r - lo) / width * static_cast<double>(bins)));
      cond[std::min(k, b - 1)] += unit;
    }
    conditional += weight * histogram_entropy(cond);
    for (std::size_t k = 0; k < b; ++k) pooled[k] += weight * cond[k];
  }
  return std::max(0.0, histogram_entropy(pooled) - conditional);
}

}  // namespace eden
