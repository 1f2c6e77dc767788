#include "smv/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace smv {

namespace {

// Top-k accepted candidates by score, descending; stable under enumeration
// order for ties.
std::vector<const ScoredCandidate*> top_accepted(
    const std::vector<ScoredCandidate>& scored, size_t k) {
  std::vector<const ScoredCandidate*> accepted;
  for (const ScoredCandidate& s : scored) {
    if (s.accepted) accepted.push_back(&s);
  }
  std::stable_sort(accepted.begin(), accepted.end(),
                   [](const ScoredCandidate* a, const ScoredCandidate* b) {
                     return a->score > b->score;
                   });
  if (accepted.size() > k) accepted.resize(k);
  return accepted;
}

}  // namespace

std::vector<RawCandidate> pool_candidates(
    const SaliencyRecord& record, const std::vector<ScoredCandidate>& conv,
    const std::vector<ScoredCandidate>& span, size_t k) {
  // Index set -> (position in pool, score) for dedup.
  std::map<std::vector<size_t>, std::pair<size_t, double>> seen;
  std::vector<RawCandidate> pool;

  auto add = [&](const RawCandidate& cand, double score) {
    auto it = seen.find(cand.indices.indices());
    if (it == seen.end()) {
      seen.emplace(cand.indices.indices(), std::make_pair(pool.size(), score));
      pool.push_back(cand);
    } else if (score > it->second.second) {
      pool[it->second.first] = cand;
      it->second.second = score;
    }
  };

  for (const ScoredCandidate* s : top_accepted(conv, k)) {
    add(s->candidate, s->score);
  }
  for (const ScoredCandidate* s : top_accepted(span, k)) {
    add(s->candidate, s->score);
  }
  for (size_t i :
       top_k_indices(record, k, Polarity::signed_scores).indices()) {
    RawCandidate single;
    single.indices = TokenSelection({i});
    single.values = {record.scores[i]};
    single.source = CandidateSource::top_k;
    single.window_offset = i;
    add(single, record.scores[i]);
  }
  return pool;
}

std::vector<MergedSpan> merge_adjacent(const std::vector<RawCandidate>& pool,
                                       const SaliencyRecord& record) {
  // Union of all pooled indices, remembering contributing sources per index.
  std::map<size_t, std::set<CandidateSource>> contributions;
  for (const RawCandidate& cand : pool) {
    for (size_t i : cand.indices.indices()) {
      contributions[i].insert(cand.source);
    }
  }

  std::vector<MergedSpan> spans;
  std::vector<size_t> run;
  std::set<CandidateSource> origin;
  auto flush = [&]() {
    if (run.empty()) return;
    MergedSpan span;
    span.indices = TokenSelection(run);
    span.coverage_positive = coverage_positive(record, span.indices);
    span.origin = origin;
    spans.push_back(std::move(span));
    run.clear();
    origin.clear();
  };
  for (const auto& [index, sources] : contributions) {
    if (!run.empty() && index != run.back() + 1) flush();
    run.push_back(index);
    origin.insert(sources.begin(), sources.end());
  }
  flush();
  return spans;
}

std::vector<MergedSpan> quantile_select(const std::vector<MergedSpan>& spans,
                                        double q) {
  if (spans.empty()) {
    throw NoSpansError("quantile selection over an empty span list");
  }
  if (q <= 0.0 || q >= 1.0) {
    throw ValidationError("quantile q must be in (0, 1), got " +
                          std::to_string(q));
  }
  std::vector<double> coverages;
  coverages.reserve(spans.size());
  for (const MergedSpan& s : spans) coverages.push_back(s.coverage_positive);
  std::sort(coverages.begin(), coverages.end());

  // Linear interpolation between order statistics.
  double h = q * static_cast<double>(coverages.size() - 1);
  auto lo = static_cast<size_t>(std::floor(h));
  size_t hi = std::min(lo + 1, coverages.size() - 1);
  double threshold = coverages[lo] + (h - std::floor(h)) *
                                         (coverages[hi] - coverages[lo]);

  std::vector<MergedSpan> kept;
  for (const MergedSpan& s : spans) {
    if (s.coverage_positive >= threshold) kept.push_back(s);
  }
  if (kept.empty()) {
    // Unreachable with a >= rule, but the contract promises a fallback.
    kept.push_back(*std::max_element(
        spans.begin(), spans.end(),
        [](const MergedSpan& a, const MergedSpan& b) {
          return a.coverage_positive < b.coverage_positive;
        }));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const MergedSpan& a, const MergedSpan& b) {
                     if (a.coverage_positive != b.coverage_positive) {
                       return a.coverage_positive > b.coverage_positive;
                     }
                     return a.indices.indices() < b.indices.indices();
                   });
  return kept;
}

std::vector<MergedSpan> summarize(const SaliencyRecord& record,
                                  const SelectConfig& config,
                                  const ScoringConfig& scoring, int c_conv,
                                  int c_span) {
  const size_t n = record.size();
  std::vector<ScoredCandidate> conv;
  std::vector<ScoredCandidate> span;
  if (c_conv >= 3 && static_cast<size_t>(c_conv) <= n) {
    conv = accept_all(
        apply_filters(record, convolution_filters(c_conv),
                      CandidateSource::convolution),
        record, scoring);
  }
  if (c_span >= 1 && c_span % 2 == 1 && static_cast<size_t>(c_span) <= n) {
    span = accept_all(
        apply_filters(record, span_filters(c_span), CandidateSource::span),
        record, scoring);
  }
  auto pool = pool_candidates(record, conv, span, config.k);
  auto spans = quantile_select(merge_adjacent(pool, record), config.q);
  if (config.max_final && spans.size() > *config.max_final) {
    spans.resize(*config.max_final);
  }
  return spans;
}

namespace {

struct Bucket {
  std::vector<const SaliencyRecord*> right;  // predicted == true
  std::vector<const SaliencyRecord*> wrong;
};

void sort_by_id(std::vector<const SaliencyRecord*>& records) {
  std::sort(records.begin(), records.end(),
            [](const SaliencyRecord* a, const SaliencyRecord* b) {
              return a->id < b->id;
            });
}

}  // namespace

std::vector<SaliencyRecord> subset_filter(
    const std::vector<SaliencyRecord>& records, double min_cov_pos_topk,
    size_t max_tokens, const BalanceFlags& balance, size_t top_k) {
  std::vector<const SaliencyRecord*> filtered;
  for (const SaliencyRecord& record : records) {
    if (record.size() > max_tokens) continue;
    TokenSelection top = top_k_indices(record, top_k, Polarity::positive_only);
    if (top.empty()) continue;  // no positive attribution at all
    if (coverage_positive(record, top) < min_cov_pos_topk) continue;
    filtered.push_back(&record);
  }

  if (!balance.labels && !balance.error_rate) {
    std::vector<SaliencyRecord> out;
    out.reserve(filtered.size());
    for (const SaliencyRecord* r : filtered) out.push_back(*r);
    return out;
  }

  if (filtered.empty()) {
    throw InsufficientRecordsError("no records survive the subset filters");
  }

  // Group by true label (single group when label balancing is off), splitting
  // each group into right and wrong predictions, ordered by id.
  std::map<std::string, Bucket> buckets;
  for (const SaliencyRecord* r : filtered) {
    std::string key = balance.labels ? r->true_label : "";
    Bucket& b = buckets[key];
    (r->predicted_label == r->true_label ? b.right : b.wrong).push_back(r);
  }
  for (auto& [label, bucket] : buckets) {
    sort_by_id(bucket.right);
    sort_by_id(bucket.wrong);
  }

  // Pick the largest per-group count t every group can supply. With an error
  // rate, each group must contribute round(rate * t) wrong predictions and
  // the rest right ones, so the rate holds overall and per label.
  size_t t_max = std::numeric_limits<size_t>::max();
  for (const auto& [label, bucket] : buckets) {
    t_max = std::min(t_max, bucket.right.size() + bucket.wrong.size());
  }
  size_t chosen_t = 0;
  size_t chosen_wrong = 0;
  for (size_t t = t_max; t >= 1; --t) {
    if (balance.error_rate) {
      auto w = static_cast<size_t>(
          std::llround(*balance.error_rate * static_cast<double>(t)));
      if (w > t) continue;
      bool ok = true;
      for (const auto& [label, bucket] : buckets) {
        if (bucket.wrong.size() < w || bucket.right.size() < t - w) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen_wrong = w;
    }
    chosen_t = t;
    break;
  }
  if (chosen_t == 0) {
    throw InsufficientRecordsError(
        "cannot satisfy the balancing constraints with the filtered records");
  }

  std::vector<const SaliencyRecord*> kept;
  for (auto& [label, bucket] : buckets) {
    if (balance.error_rate) {
      for (size_t i = 0; i < chosen_wrong; ++i) {
        kept.push_back(bucket.wrong[i]);
      }
      for (size_t i = 0; i < chosen_t - chosen_wrong; ++i) {
        kept.push_back(bucket.right[i]);
      }
    } else {
      std::vector<const SaliencyRecord*> merged = bucket.right;
      merged.insert(merged.end(), bucket.wrong.begin(), bucket.wrong.end());
      sort_by_id(merged);
      for (size_t i = 0; i < chosen_t; ++i) kept.push_back(merged[i]);
    }
  }
  sort_by_id(kept);

  std::vector<SaliencyRecord> out;
  out.reserve(kept.size());
  for (const SaliencyRecord* r : kept) out.push_back(*r);
  return out;
}

}  // namespace smv
