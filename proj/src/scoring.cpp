#include "smv/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smv {

std::string to_string(ScoringMetric metric) {
  return metric == ScoringMetric::weighted_average ? "weighted_average"
                                                   : "quantile";
}

ScoringMetric scoring_metric_from_string(const std::string& s) {
  if (s == "weighted_average") return ScoringMetric::weighted_average;
  if (s == "quantile") return ScoringMetric::quantile;
  throw ValidationError("unknown scoring metric '" + s + "'");
}

double baseline_beta(const SaliencyRecord& record, double beta_fraction) {
  if (beta_fraction <= 0.0 || beta_fraction > 1.0) {
    throw ValidationError("beta_fraction must be in (0, 1], got " +
                          std::to_string(beta_fraction));
  }
  const size_t n = record.size();
  auto count = static_cast<size_t>(
      std::ceil(beta_fraction * static_cast<double>(n)));
  count = std::clamp<size_t>(count, 1, n);

  std::vector<double> sorted = record.scores;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double sum = std::accumulate(sorted.begin(), sorted.begin() + count, 0.0);
  return sum / static_cast<double>(count);
}

double score_weighted_average(const RawCandidate& candidate) {
  if (candidate.values.empty()) {
    throw EmptyCandidateError("cannot score an empty candidate");
  }
  double sum = std::accumulate(candidate.values.begin(),
                               candidate.values.end(), 0.0);
  return sum / static_cast<double>(candidate.values.size());
}

double score_quantile_threshold(const SaliencyRecord& record,
                                double sigma_multiplier) {
  const size_t n = record.size();
  if (n < 2) {
    throw DegenerateSampleError(
        "record '" + record.id +
        "': standard deviation needs at least two tokens");
  }
  double mean = std::accumulate(record.scores.begin(), record.scores.end(),
                                0.0) /
                static_cast<double>(n);
  double sq = 0.0;
  for (double s : record.scores) sq += (s - mean) * (s - mean);
  double stddev = std::sqrt(sq / static_cast<double>(n));
  return mean + sigma_multiplier * stddev;
}

ScoringThresholds compute_thresholds(const SaliencyRecord& record,
                                     const ScoringConfig& config) {
  ScoringThresholds t;
  t.beta = config.beta_override ? *config.beta_override
                                : baseline_beta(record, config.beta_fraction);
  if (config.metric == ScoringMetric::quantile) {
    t.sigma = score_quantile_threshold(record, config.sigma_multiplier);
  }
  return t;
}

ScoredCandidate accept(const RawCandidate& candidate,
                       const ScoringThresholds& thresholds,
                       const ScoringConfig& config) {
  ScoredCandidate scored;
  scored.score = score_weighted_average(candidate);
  if (config.metric == ScoringMetric::weighted_average) {
    scored.accepted = scored.score > thresholds.beta;
  } else {
    scored.accepted =
        scored.score > *thresholds.sigma && scored.score > thresholds.beta;
  }
  scored.candidate = candidate;
  return scored;
}

ScoredCandidate accept(const RawCandidate& candidate,
                       const SaliencyRecord& record,
                       const ScoringConfig& config) {
  return accept(candidate, compute_thresholds(record, config), config);
}

std::vector<ScoredCandidate> accept_all(std::vector<RawCandidate> candidates,
                                        const SaliencyRecord& record,
                                        const ScoringConfig& config) {
  std::vector<ScoredCandidate> scored;
  scored.reserve(candidates.size());
  if (candidates.empty()) return scored;
  ScoringThresholds thresholds = compute_thresholds(record, config);
  for (RawCandidate& cand : candidates) {
    ScoredCandidate s = accept(cand, thresholds, config);
    s.candidate = std::move(cand);
    scored.push_back(std::move(s));
  }
  return scored;
}

}  // namespace smv
