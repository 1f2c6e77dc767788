#pragma once

#include <optional>
#include <set>
#include <vector>

#include "smv/scoring.hpp"

namespace smv {

/// A maximal run of consecutive token indices pooled from the searches, with
/// its positive coverage and the set of sources that contributed to it.
struct MergedSpan {
  TokenSelection indices;
  double coverage_positive = 0.0;
  std::set<CandidateSource> origin;
};

struct SelectConfig {
  /// Candidates kept per source when pooling.
  size_t k = 5;
  /// Coverage quantile a span must reach to stay selected.
  double q = 0.75;
  /// Optional cap on the number of spans a summary may return.
  std::optional<size_t> max_final;
};

/// Union of the top-k accepted candidates from each search plus the top-k
/// single tokens, deduplicated by index set (highest score wins).
std::vector<RawCandidate> pool_candidates(
    const SaliencyRecord& record, const std::vector<ScoredCandidate>& conv,
    const std::vector<ScoredCandidate>& span, size_t k);

/// Unions all pooled index sets and splits them into maximal consecutive
/// runs, recomputing positive coverage per run.
std::vector<MergedSpan> merge_adjacent(const std::vector<RawCandidate>& pool,
                                       const SaliencyRecord& record);

/// Keeps spans whose coverage reaches the q-th quantile (linear
/// interpolation), ordered by coverage descending; falls back to the single
/// top span if nothing qualifies. Throws NoSpansError on empty input.
std::vector<MergedSpan> quantile_select(const std::vector<MergedSpan>& spans,
                                        double q);

/// Full selection pipeline: search -> scoring -> pool -> merge -> quantile.
/// A search whose window exceeds the record length contributes nothing.
/// Never returns an empty list.
std::vector<MergedSpan> summarize(const SaliencyRecord& record,
                                  const SelectConfig& config,
                                  const ScoringConfig& scoring, int c_conv,
                                  int c_span);

struct BalanceFlags {
  /// Downsample to equal true-label counts.
  bool labels = false;
  /// Enforce this fraction of wrongly predicted records.
  std::optional<double> error_rate;
};

/// Corpus subset heuristics: keeps records whose top-k positive coverage
/// reaches the threshold and whose length fits, then applies the balancing
/// flags. Deterministic: buckets are ordered by record id.
std::vector<SaliencyRecord> subset_filter(
    const std::vector<SaliencyRecord>& records, double min_cov_pos_topk = 0.15,
    size_t max_tokens = 80, const BalanceFlags& balance = {}, size_t top_k = 5);

}  // namespace smv
