#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eden {

class UnreachableThreshold : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyticParams {
  double required_actions = 0;  // count of required non-move action types
  double expected_moves = 0;
  std::vector<double> p_required;  // per-stage success probability
  std::vector<double> p_useless;   // per-stage valid but useless probability
  double threshold = 0.95;
};

// Empty when valid; otherwise one message per broken precondition.
std::vector<std::string> check_params(const AnalyticParams& params);

int estimate_ttmn(double required_actions, double expected_moves);

// P(first completion <= t): zero before the last stage can be reached, then
// a stage-by-elapsed-time recursion over useless-action insertions.
double first_completion_cdf(const AnalyticParams& params, int t);

// CDF values for t = 0..max_t in one pass.
std::vector<double> first_completion_cdf_series(const AnalyticParams& params, int max_t);

// Limit of the CDF as t grows; below 1 when some stage can dead-end.
double cdf_limit(const AnalyticParams& params);

// Smallest t with CDF >= threshold, searched up to `bound`.
int ttmx_analytic(const AnalyticParams& params, int bound = 1'000'000);

struct Goal {
  int level = 1;
  int deadline = 0;  // completed at or before this step

  bool operator==(const Goal&) const = default;
};

struct GoalLadder {
  std::vector<int> breakpoints;  // a_0..a_n
  std::vector<Goal> goals;       // n goals, goal i has deadline a_i
};

GoalLadder goal_ladder(int ttmn, int ttmx, int n, std::optional<std::vector<int>> breakpoints = std::nullopt);

// Plug-in histogram estimate of I(R; policy) with B equal-width bins over the
// pooled range, natural log, clamped at 0. Each policy carries equal weight.
double pic_estimate(const std::vector<std::vector<double>>& samples, int bins);

double histogram_entropy(std::span<const double> probabilities);

}  // namespace eden
