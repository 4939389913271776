#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "eden/metrics.hpp"
#include "eden/rng.hpp"

using namespace eden;

namespace {

AnalyticParams params(std::vector<double> ps, std::vector<double> pu, double th = 0.95) {
  AnalyticParams p;
  p.required_actions = static_cast<double>(ps.size());
  p.p_required = std::move(ps);
  p.p_useless = std::move(pu);
  p.threshold = th;
  return p;
}

// Literal composition sum: P(first completion at exactly T) adds, over every
// split of T - E useless steps across the E stages, prod p_j^{n_j} p*_j.
double composition_cdf(const AnalyticParams& p, int t) {
  const int stages = static_cast<int>(p.p_required.size());
  double total = 0;
  std::vector<int> n(static_cast<std::size_t>(stages), 0);
  std::function<void(int, int)> split = [&](int j, int left) {
    if (j == stages - 1) {
      n[static_cast<std::size_t>(j)] = left;
      double w = 1;
      for (int k = 0; k < stages; ++k) {
        w *= std::pow(p.p_useless[static_cast<std::size_t>(k)], n[static_cast<std::size_t>(k)]) *
             p.p_required[static_cast<std::size_t>(k)];
      }
      total += w;
      return;
    }
    for (int m = 0; m <= left; ++m) {
      n[static_cast<std::size_t>(j)] = m;
      split(j + 1, left - m);
    }
  };
  for (int T = stages; T <= t; ++T) split(0, T - stages);
  return total;
}

// Enumerates every outcome string of length t over {advance, useless, dead end}.
double enumerate_cdf(const AnalyticParams& p, int t) {
  const std::size_t stages = p.p_required.size();
  std::function<double(std::size_t, int)> walk = [&](std::size_t stage, int left) -> double {
    if (stage == stages) return 1.0;
    if (left == 0) return 0.0;
    return p.p_required[stage] * walk(stage + 1, left - 1) + p.p_useless[stage] * walk(stage, left - 1);
  };
  return walk(0, t);
}

AnalyticParams random_params(Rng& rng, int stages) {
  std::vector<double> ps, pu;
  for (int j = 0; j < stages; ++j) {
    const double a = 0.05 + 0.9 * rng.uniform();
    ps.push_back(a);
    pu.push_back((1 - a) * rng.uniform());
  }
  return params(ps, pu);
}

}  // namespace

TEST(Metrics, EstimateTtmn) {
  EXPECT_EQ(estimate_ttmn(2, 0), 2);
  EXPECT_EQ(estimate_ttmn(2, 3.4), 6);
  EXPECT_EQ(estimate_ttmn(0, 0), 0);
}

TEST(Metrics, SingleStageGeometric) {
  const auto p = params({0.5}, {0.5});
  EXPECT_DOUBLE_EQ(first_completion_cdf(p, 0), 0);
  EXPECT_DOUBLE_EQ(first_completion_cdf(p, 1), 0.5);
  EXPECT_DOUBLE_EQ(first_completion_cdf(p, 2), 0.75);
  EXPECT_DOUBLE_EQ(first_completion_cdf(p, 3), 0.875);
}

TEST(Metrics, ZeroBeforeLastStageReachable) {
  const auto p = params({0.3, 0.6, 0.2}, {0.5, 0.1, 0.7});
  EXPECT_EQ(first_completion_cdf(p, 1), 0);
  EXPECT_EQ(first_completion_cdf(p, 2), 0);
  EXPECT_DOUBLE_EQ(first_completion_cdf(p, 3), 0.3 * 0.6 * 0.2);
}

TEST(Metrics, CdfMatchesCompositionSumAndEnumeration) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = random_params(rng, 1 + trial % 4);
    const auto series = first_completion_cdf_series(p, 12);
    for (int t = 0; t <= 12; ++t) {
      EXPECT_NEAR(series[static_cast<std::size_t>(t)], composition_cdf(p, t), 1e-12);
      EXPECT_NEAR(series[static_cast<std::size_t>(t)], enumerate_cdf(p, t), 1e-12);
      EXPECT_DOUBLE_EQ(series[static_cast<std::size_t>(t)], first_completion_cdf(p, t));
    }
  }
}

TEST(Metrics, CdfMonotoneAndBounded) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_params(rng, 1 + trial % 5);
    const auto s = first_completion_cdf_series(p, 300);
    for (std::size_t t = 1; t < s.size(); ++t) {
      EXPECT_GE(s[t], s[t - 1]);
      EXPECT_LE(s[t], 1.0);
    }
    EXPECT_NEAR(s.back(), cdf_limit(p), 1e-6);
  }
}

TEST(Metrics, TtmxAnalyticExamples) {
  EXPECT_EQ(ttmx_analytic(params({0.5}, {0.5}, 0.9)), 4);
  EXPECT_EQ(ttmx_analytic(params({1.0}, {0.0}, 0.9)), 1);
  EXPECT_EQ(ttmx_analytic(params({1.0}, {0.0}, 0.999)), 1);
  AnalyticParams none;
  EXPECT_EQ(ttmx_analytic(none), 0);
}

TEST(Metrics, TtmxMonotoneInThresholdAndSuccess) {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_params(rng, 1 + trial % 3);
    for (std::size_t j = 0; j < p.p_required.size(); ++j) p.p_useless[j] = 1 - p.p_required[j];
    int prev = 0;
    for (double th : {0.9, 0.93, 0.95, 0.97, 0.99}) {
      p.threshold = th;
      const int t = ttmx_analytic(p);
      EXPECT_GE(t, prev);
      EXPECT_GE(first_completion_cdf(p, t), th);
      EXPECT_LT(first_completion_cdf(p, t - 1), th);
      prev = t;
    }
    auto q = p;
    q.p_required[0] = std::min(1.0, q.p_required[0] * 1.5);
    q.p_useless[0] = 1 - q.p_required[0];
    EXPECT_LE(ttmx_analytic(q), ttmx_analytic(p));
  }
}

TEST(Metrics, DeadEndsMakeThresholdUnreachable) {
  const auto p = params({0.5}, {0.3}, 0.9);  // limit 0.5 / 0.7
  EXPECT_THROW(ttmx_analytic(p), UnreachableThreshold);
  EXPECT_THROW(ttmx_analytic(params({0.01}, {0.99}, 0.99), 10), UnreachableThreshold);
}

TEST(Metrics, ParamValidation) {
  EXPECT_TRUE(check_params(params({0.5}, {0.5})).empty());
  auto bad = params({0.5, 0.5}, {0.6, 0.2}, 0.8);
  bad.required_actions = 1;
  const auto errors = check_params(bad);
  EXPECT_GE(errors.size(), 3u);
  EXPECT_FALSE(check_params(params({0.0}, {0.5})).empty());
  EXPECT_THROW(ttmx_analytic(bad), std::invalid_argument);
}

TEST(Metrics, GoalLadderDefault) {
  const GoalLadder l = goal_ladder(2, 10, 4);
  EXPECT_EQ(l.breakpoints, (std::vector<int>{2, 4, 6, 8, 10}));
  ASSERT_EQ(l.goals.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(l.goals[static_cast<std::size_t>(i)], (Goal{i + 1, 2 + 2 * i}));
}

TEST(Metrics, GoalLadderUnitWidth) {
  const GoalLadder l = goal_ladder(3, 7, 4);
  EXPECT_EQ(l.breakpoints, (std::vector<int>{3, 4, 5, 6, 7}));
}

TEST(Metrics, GoalLadderValidation) {
  EXPECT_THROW(goal_ladder(2, 10, 1), std::invalid_argument);
  EXPECT_THROW(goal_ladder(2, 4, 3), std::invalid_argument);
  EXPECT_THROW(goal_ladder(2, 10, 2, std::vector<int>{2, 8, 6}), std::invalid_argument);
  EXPECT_THROW(goal_ladder(2, 10, 2, std::vector<int>{3, 6, 10}), std::invalid_argument);
  EXPECT_THROW(goal_ladder(2, 10, 3, std::vector<int>{2, 6, 10}), std::invalid_argument);
  EXPECT_EQ(goal_ladder(2, 10, 2, std::vector<int>{2, 3, 10}).goals[1].deadline, 3);
}

TEST(Metrics, PicExamples) {
  EXPECT_EQ(pic_estimate({{3, 3, 3}, {3, 3}}, 4), 0);
  EXPECT_NEAR(pic_estimate({{0, 0, 0}, {1, 1, 1}}, 2), std::log(2.0), 1e-12);
  EXPECT_THROW(pic_estimate({{0, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(pic_estimate({{0, 1}, {1}}, 1), std::invalid_argument);
  EXPECT_THROW(pic_estimate({{0, 1}, {}}, 2), std::invalid_argument);
}

TEST(Metrics, PicWorkedExample) {
  // bins over [0, 1]: policy A puts 1/2 in each bin, B puts 1/4 and 3/4
  const double pic = pic_estimate({{0, 1}, {0, 1, 1, 1}}, 2);
  const auto h = [](std::vector<double> v) { return histogram_entropy(v); };
  EXPECT_NEAR(pic, h({0.375, 0.625}) - 0.5 * (h({0.5, 0.5}) + h({0.25, 0.75})), 1e-12);
}

TEST(Metrics, PicBoundedAndPermutationInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int bins = 2 + static_cast<int>(rng.below(8));
    std::vector<std::vector<double>> s(static_cast<std::size_t>(n));
    for (auto& v : s) {
      const int m = 1 + static_cast<int>(rng.below(12));
      for (int k = 0; k < m; ++k) v.push_back(rng.uniform() < 0.3 ? std::floor(rng.uniform() * 3) : rng.normal());
    }
    const double pic = pic_estimate(s, bins);
    EXPECT_GE(pic, 0);
    EXPECT_LE(pic, std::log(static_cast<double>(bins)) + 1e-12);
    auto rev = s;
    std::reverse(rev.begin(), rev.end());
    EXPECT_NEAR(pic_estimate(rev, bins), pic, 1e-12);
    auto scaled = s;
    for (auto& v : scaled) {
      for (double& r : v) r = 2.5 * r - 7;
    }
    EXPECT_NEAR(pic_estimate(scaled, bins), pic, 1e-9);
  }
}

TEST(Metrics, HistogramEntropy) {
  EXPECT_EQ(histogram_entropy(std::vector<double>{1, 0}), 0);
  EXPECT_NEAR(histogram_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}), std::log(4.0), 1e-15);
}
