#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "../support/naive_reference.hpp"
#include "shepherd/metrics.hpp"

namespace shepherd {
namespace {

EpisodeResult ep(bool success, std::size_t steps) { return {success, steps, 0, 0.0}; }

TEST(RunningStats, SingleSample) {
  RunningStats s;
  s.ingest(ep(true, 400));
  EXPECT_EQ(s.episodes(), 1u);
  EXPECT_DOUBLE_EQ(*s.mean(), 400.0);
  EXPECT_FALSE(s.std_dev());
  EXPECT_FALSE(s.sem());
  EXPECT_FALSE(s.sem_percent());
  EXPECT_FALSE(is_stable(s, 3.0));
}

TEST(RunningStats, TwoSamples) {
  RunningStats s;
  s.ingest(ep(true, 400));
  s.ingest(ep(true, 600));
  EXPECT_DOUBLE_EQ(*s.mean(), 500.0);
  EXPECT_NEAR(*s.std_dev(), 141.42, 1e-2);
  EXPECT_NEAR(*s.sem(), 100.0, 1e-9);
  EXPECT_NEAR(*s.sem_percent(), 20.0, 1e-9);
}

TEST(RunningStats, EmptyHasNothing) {
  RunningStats s;
  EXPECT_EQ(s.success_rate_pct(), 0.0);
  EXPECT_FALSE(s.mean());
}

TEST(RunningStats, SuccessRate) {
  RunningStats s;
  for (int i = 0; i < 300; ++i) s.ingest(ep(i < 270, i < 270 ? 500 : 1000));
  EXPECT_DOUBLE_EQ(s.success_rate_pct(), 90.0);
  EXPECT_EQ(s.successes(), 270u);
}

TEST(RunningStats, FailurePolicies) {
  RunningStats inc(StepPolicy::IncludeFailures);
  RunningStats only(StepPolicy::SuccessesOnly);
  for (auto* s : {&inc, &only}) {
    s->ingest(ep(true, 300));
    s->ingest(ep(true, 500));
    s->ingest(ep(false, 1000));
  }
  EXPECT_DOUBLE_EQ(*inc.mean(), 600.0);
  EXPECT_EQ(inc.samples(), 3u);
  EXPECT_DOUBLE_EQ(*only.mean(), 400.0);
  EXPECT_EQ(only.samples(), 2u);
  EXPECT_EQ(only.episodes(), 3u);
  EXPECT_NEAR(only.success_rate_pct(), 200.0 / 3.0, 1e-12);
}

TEST(Sem, Examples) {
  EXPECT_DOUBLE_EQ(sem(100, 25), 20.0);
  EXPECT_DOUBLE_EQ(sem(0, 10), 0.0);
  EXPECT_NEAR(sem(141.42, 2), 100.0, 1e-2);
  EXPECT_THROW(sem(1, 0), std::invalid_argument);
}

TEST(IsStable, Examples) {
  RunningStats a;  // mean 500, SEM 10 -> 2 %
  a.add_sample(490);
  a.add_sample(510);
  EXPECT_NEAR(*a.sem(), 10.0, 1e-12);
  EXPECT_TRUE(is_stable(a, 3.0));

  RunningStats b;  // mean 500, SEM 20 -> 4 %
  b.add_sample(480);
  b.add_sample(520);
  EXPECT_NEAR(*b.sem(), 20.0, 1e-12);
  EXPECT_FALSE(is_stable(b, 3.0));

  RunningStats c;
  c.add_sample(500);
  EXPECT_FALSE(is_stable(c, 3.0));
}

TEST(RunningStats, SemShrinksAsInverseRootN) {
  // Alternating samples keep Std essentially constant.
  RunningStats s;
  double prev = INFINITY;
  for (int i = 0; i < 200; ++i) {
    s.add_sample(i % 2 ? 600 : 400);
    if (i >= 3 && i % 2 == 1) {
      const double e = *s.sem();
      EXPECT_LT(e, prev);
      EXPECT_NEAR(e * std::sqrt(static_cast<double>(s.samples())), *s.std_dev(), 1e-9);
      prev = e;
    }
  }
}

TEST(RunningStats, MatchesTwoPassOnRandomSequences) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> len(2, 300);
  std::uniform_real_distribution<double> scale(1, 1000);
  double worst = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = len(gen);
    const double sc = scale(gen);
    std::normal_distribution<double> d(sc, sc / 3);
    std::vector<double> xs(static_cast<std::size_t>(n));
    RunningStats s;
    for (auto& x : xs) {
      x = d(gen);
      s.add_sample(x);
    }
    const double ref_std = reference::two_pass_std(xs);
    const double ref_mean = reference::two_pass_mean(xs);
    worst = std::max(worst, std::abs(*s.std_dev() - ref_std));
    ASSERT_NEAR(*s.mean(), ref_mean, 1e-9);
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(RunningStats, PermutationInvariant) {
  std::mt19937_64 gen(5);
  std::vector<EpisodeResult> rs;
  for (int i = 0; i < 300; ++i) {
    const bool ok = gen() % 5 != 0;
    rs.push_back(ep(ok, ok ? 100 + gen() % 800 : 1000));
  }
  RunningStats base;
  for (const auto& r : rs) base.ingest(r);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(rs.begin(), rs.end(), gen);
    RunningStats s;
    for (const auto& r : rs) s.ingest(r);
    EXPECT_NEAR(*s.mean(), *base.mean(), 1e-9);
    EXPECT_NEAR(*s.std_dev(), *base.std_dev(), 1e-9);
    EXPECT_EQ(s.success_rate_pct(), base.success_rate_pct());
  }
}

TEST(RunningStats, MergeMatchesSequentialAndIsAssociative) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> d(50, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    RunningStats a, b, c, all;
    const int na = static_cast<int>(gen() % 20), nb = static_cast<int>(gen() % 20),
              nc = static_cast<int>(gen() % 20) + 1;
    for (int i = 0; i < na; ++i) { const double x = d(gen); a.add_sample(x); all.add_sample(x); }
    for (int i = 0; i < nb; ++i) { const double x = d(gen); b.add_sample(x); all.add_sample(x); }
    for (int i = 0; i < nc; ++i) { const double x = d(gen); c.add_sample(x); all.add_sample(x); }

    RunningStats left = a;  // (a + b) + c
    left.merge(b);
    left.merge(c);
    RunningStats bc = b;  // a + (b + c)
    bc.merge(c);
    RunningStats right = a;
    right.merge(bc);

    ASSERT_EQ(left.samples(), all.samples());
    EXPECT_NEAR(*left.mean(), *all.mean(), 1e-9);
    EXPECT_NEAR(*right.mean(), *all.mean(), 1e-9);
    if (all.samples() >= 2) {
      EXPECT_NEAR(*left.std_dev(), *all.std_dev(), 1e-9);
      EXPECT_NEAR(*right.std_dev(), *all.std_dev(), 1e-9);
    }
  }
}

TEST(RunningStats, MergePolicyMismatchThrows) {
  RunningStats a(StepPolicy::IncludeFailures), b(StepPolicy::SuccessesOnly);
  EXPECT_THROW(a.merge(b), std::invalid_argument);
}

TEST(StepPolicy, RoundTrip) {
  EXPECT_EQ(parse_step_policy(to_string(StepPolicy::SuccessesOnly)), StepPolicy::SuccessesOnly);
  EXPECT_EQ(parse_step_policy("include_failures"), StepPolicy::IncludeFailures);
  EXPECT_THROW(parse_step_policy("mean"), std::invalid_argument);
}

TEST(SummarizeSetup, CurveAndStableAt) {
  // Noisy start, then identical values: SEM-P falls below 3 % and stays there.
  std::vector<EpisodeResult> rs{ep(true, 100), ep(true, 900), ep(true, 500)};
  for (int i = 0; i < 200; ++i) rs.push_back(ep(true, 500));
  const SetupSummary s = summarize_setup({0, 0, 0}, rs, StepPolicy::IncludeFailures, 3.0);
  EXPECT_EQ(s.episodes, rs.size());
  ASSERT_EQ(s.curve.size(), rs.size() - 1);
  EXPECT_EQ(s.curve.front().episode, 2u);
  EXPECT_EQ(s.curve.back().episode, rs.size());

  ASSERT_TRUE(s.stable_at);
  const std::size_t at = *s.stable_at;
  for (const auto& pt : s.curve) {
    if (pt.episode >= at) {
      EXPECT_LT(*pt.sem_percent, 3.0);
    }
  }
  // The point just before stable_at is not below the threshold.
  const auto& before = s.curve[at - 3];
  EXPECT_EQ(before.episode, at - 1);
  EXPECT_GE(*before.sem_percent, 3.0);
}

TEST(SummarizeSetup, LaterExcursionResetsStableAt) {
  std::vector<EpisodeResult> rs;
  for (int i = 0; i < 50; ++i) rs.push_back(ep(true, 500 + (i % 2)));
  const auto early = summarize_setup({0, 0, 0}, rs, StepPolicy::IncludeFailures, 3.0);
  ASSERT_TRUE(early.stable_at);
  EXPECT_EQ(*early.stable_at, 2u);
  for (int i = 0; i < 3; ++i) rs.push_back(ep(false, 1000 * 40));
  const auto late = summarize_setup({0, 0, 0}, rs, StepPolicy::IncludeFailures, 3.0);
  EXPECT_FALSE(late.stable_at);
}

TEST(SummarizeSetup, AllFailures) {
  std::vector<EpisodeResult> rs(10, ep(false, 1000));
  const auto s = summarize_setup({0, 0, 6}, rs, StepPolicy::IncludeFailures, 3.0);
  EXPECT_EQ(s.success_rate_pct, 0.0);
  EXPECT_DOUBLE_EQ(*s.mean_ns, 1000.0);
  EXPECT_DOUBLE_EQ(*s.sem, 0.0);
  const auto t = summarize_setup({0, 0, 6}, rs, StepPolicy::SuccessesOnly, 3.0);
  EXPECT_FALSE(t.mean_ns);
  EXPECT_FALSE(t.stable_at);
}

}  // namespace
}  // namespace shepherd
