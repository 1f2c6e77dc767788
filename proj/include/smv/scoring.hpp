#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smv/search.hpp"

namespace smv {

enum class ScoringMetric { weighted_average, quantile };

std::string to_string(ScoringMetric metric);
ScoringMetric scoring_metric_from_string(const std::string& s);

struct ScoringConfig {
  ScoringMetric metric = ScoringMetric::weighted_average;
  /// Fraction of tokens (by descending score) averaged into the baseline.
  double beta_fraction = 0.4;
  /// Standard-deviation multiplier for the quantile metric.
  double sigma_multiplier = 3.0;
  /// When set, used as a fixed absolute baseline instead of the computed one.
  std::optional<double> beta_override;
  std::string notes;
};

struct ScoredCandidate {
  RawCandidate candidate;
  double score = 0.0;
  bool accepted = false;
};

/// Per-record acceptance thresholds, computed once and shared.
struct ScoringThresholds {
  double beta = 0.0;
  std::optional<double> sigma;  // set only for the quantile metric
};

/// Mean of the top ceil(beta_fraction * n) scores, descending by signed
/// value. Fractions below one token fall back to the single top score.
double baseline_beta(const SaliencyRecord& record, double beta_fraction);

/// Sum of the candidate's values over the number of selected tokens.
double score_weighted_average(const RawCandidate& candidate);

/// mean(scores) + sigma_multiplier * population stddev(scores). Needs at
/// least two tokens.
double score_quantile_threshold(const SaliencyRecord& record,
                                double sigma_multiplier);

ScoringThresholds compute_thresholds(const SaliencyRecord& record,
                                     const ScoringConfig& config);

/// Scores one candidate against precomputed thresholds. Acceptance uses
/// strict inequality: weighted_average accepts when the per-word mean beats
/// beta; quantile additionally requires beating the sigma threshold.
ScoredCandidate accept(const RawCandidate& candidate,
                       const ScoringThresholds& thresholds,
                       const ScoringConfig& config);

ScoredCandidate accept(const RawCandidate& candidate,
                       const SaliencyRecord& record,
                       const ScoringConfig& config);

std::vector<ScoredCandidate> accept_all(std::vector<RawCandidate> candidates,
                                        const SaliencyRecord& record,
                                        const ScoringConfig& config);

}  // namespace smv
