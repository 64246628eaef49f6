#include "shepherd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shepherd {

std::string_view to_string(StepPolicy policy) {
  return policy == StepPolicy::SuccessesOnly ? "successes_only" : "include_failures";
}

StepPolicy parse_step_policy(std::string_view s) {
  if (s == "include_failures") return StepPolicy::IncludeFailures;
  if (s == "successes_only") return StepPolicy::SuccessesOnly;
  throw std::invalid_argument("unknown step policy '" + std::string(s) + "'");
}

void RunningStats::ingest(const EpisodeResult& result) {
  ++episodes_;
  if (result.success) ++successes_;
  if (result.success || policy_ == StepPolicy::IncludeFailures) {
    add_sample(static_cast<double>(result.steps));
  }
}

void RunningStats::add_sample(double steps) {
  ++samples_;
  const double delta = steps - mean_;
  mean_ += delta / static_cast<double>(samples_);
  m2_ += delta * (steps - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.policy_ != policy_) throw std::invalid_argument("merging stats with different policies");
  episodes_ += other.episodes_;
  successes_ += other.successes_;
  if (other.samples_ == 0) return;
  if (samples_ == 0) {
    samples_ = other.samples_;
    mean_ = other.mean_;
    m2_ = other.m2_;
    return;
  }
  const double na = static_cast<double>(samples_);
  const double nb = static_cast<double>(other.samples_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ = (na * mean_ + nb * other.mean_) / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  samples_ += other.samples_;
}

double RunningStats::success_rate_pct() const {
  if (episodes_ == 0) return 0.0;
  return 100.0 * static_cast<double>(successes_) / static_cast<double>(episodes_);
}

std::optional<double> RunningStats::mean() const {
  if (samples_ == 0) return std::nullopt;
  return mean_;
}

std::optional<double> RunningStats::std_dev() const {
  if (samples_ < 2) return std::nullopt;
  return std::sqrt(std::max(m2_, 0.0) / static_cast<double>(samples_ - 1));
}

std::optional<double> RunningStats::sem() const {
  const auto s = std_dev();
  if (!s) return std::nullopt;
  return shepherd::sem(*s, samples_);
}

std::optional<double> RunningStats::sem_percent() const {
  const auto e = sem();
  if (!e || !(mean_ > 0.0)) return std::nullopt;
  return 100.0 * *e / mean_;
}

double sem(double std_dev, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sem of zero samples");
  return std_dev / std::sqrt(static_cast<double>(n));
}

bool is_stable(const RunningStats& stats, double threshold_percent) {
  const auto p = stats.sem_percent();
  return p.has_value() && *p < threshold_percent;
}

SetupSummary summarize_setup(const SetupId& setup, std::span<const EpisodeResult> results,
                             StepPolicy policy, double stability_threshold_pct) {
  SetupSummary summary;
  summary.setup = setup;
  RunningStats stats(policy);
  std::vector<bool> below;
  for (const auto& r : results) {
    stats.ingest(r);
    if (stats.episodes() < 2) continue;
    SemCurvePoint point;
    point.episode = stats.episodes();
    point.mean_ns = stats.mean().value_or(0.0);
    point.sem = stats.sem().value_or(0.0);
    point.sem_percent = stats.sem_percent();
    below.push_back(point.sem_percent && *point.sem_percent < stability_threshold_pct);
    summary.curve.push_back(point);
  }
  summary.episodes = stats.episodes();
  summary.success_rate_pct = stats.success_rate_pct();
  summary.mean_ns = stats.mean();
  summary.sem = stats.sem();
  summary.sem_percent = stats.sem_percent();

  std::size_t first = below.size();
  while (first > 0 && below[first - 1]) --first;
  if (first < below.size()) summary.stable_at = summary.curve[first].episode;
  return summary;
}

}  // namespace shepherd
