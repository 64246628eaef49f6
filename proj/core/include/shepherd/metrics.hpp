#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "shepherd/engine.hpp"

namespace shepherd {

/// How failed episodes enter the step-count statistics.
enum class StepPolicy {
  /// Failures contribute their step count, i.e. the step limit.
  IncludeFailures,
  /// Only successful episodes contribute to NS; SR still counts every episode.
  SuccessesOnly,
};

std::string_view to_string(StepPolicy policy);
StepPolicy parse_step_policy(std::string_view s);

/// Streaming NS/SR statistics of one setup (Welford update, Chan merge).
class RunningStats {
 public:
  RunningStats() = default;
  explicit RunningStats(StepPolicy policy) : policy_(policy) {}

  void ingest(const EpisodeResult& result);
  /// Adds one NS sample without touching the episode/success counters.
  void add_sample(double steps);
  /// Associative and commutative up to rounding. Both sides must share a policy.
  void merge(const RunningStats& other);

  StepPolicy policy() const { return policy_; }
  std::size_t episodes() const { return episodes_; }
  std::size_t successes() const { return successes_; }
  /// Number of NS samples (equals episodes() under IncludeFailures).
  std::size_t samples() const { return samples_; }

  /// Percentage of successful episodes; 0 when nothing was ingested.
  double success_rate_pct() const;
  std::optional<double> mean() const;
  /// Sample (n - 1) standard deviation; defined from two samples.
  std::optional<double> std_dev() const;
  std::optional<double> sem() const;
  /// 100 * sem / mean; requires two samples and a positive mean.
  std::optional<double> sem_percent() const;

 private:
  StepPolicy policy_{StepPolicy::IncludeFailures};
  std::size_t episodes_{0};
  std::size_t successes_{0};
  std::size_t samples_{0};
  double mean_{0.0};
  double m2_{0.0};
};

/// std / sqrt(n). Throws std::invalid_argument for n == 0.
double sem(double std_dev, std::size_t n);

/// True iff there are at least two samples, the mean is positive and
/// 100 * sem / mean < threshold_percent.
bool is_stable(const RunningStats& stats, double threshold_percent);

struct SetupId {
  int f_level{0};
  int alpha_level{0};
  int lambda_level{0};

  bool operator==(const SetupId&) const = default;
};

/// Cumulative statistics after the first `episode` episodes.
struct SemCurvePoint {
  std::size_t episode{0};
  double mean_ns{0.0};
  double sem{0.0};
  std::optional<double> sem_percent;
};

struct SetupSummary {
  SetupId setup;
  std::size_t episodes{0};
  double success_rate_pct{0.0};
  std::optional<double> mean_ns;
  std::optional<double> sem;
  std::optional<double> sem_percent;
  /// Smallest episode count from which SEM-P stays below the stability
  /// threshold through the last episode.
  std::optional<std::size_t> stable_at;
  /// One point per episode count from 2 onwards.
  std::vector<SemCurvePoint> curve;
};

/// Summarises the episodes of one setup in episode-index order.
SetupSummary summarize_setup(const SetupId& setup, std::span<const EpisodeResult> results,
                             StepPolicy policy, double stability_threshold_pct);

}  // namespace shepherd
