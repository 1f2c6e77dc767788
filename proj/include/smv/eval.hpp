#pragma once

#include <set>
#include <string>
#include <vector>

#include "smv/core.hpp"

namespace smv {

enum class MatchMode { quoted_only, all_content_words };

/// Result of mapping a verbalization's references back onto the record.
struct MentionExtraction {
  TokenSelection mentioned;
  /// Quoted phrases that matched no token subsequence of the input
  /// (hallucination candidates).
  std::vector<std::string> unmatched_phrases;
  MatchMode match_mode = MatchMode::quoted_only;
  /// Quoted phrases found in the text.
  size_t n_phrases = 0;
  /// Matched phrases whose casing and surface form were copied exactly.
  size_t n_case_exact = 0;
};

/// Extracts the tokens a verbalization refers to. quoted_only maps each
/// quoted phrase, after lowercasing and edge-punctuation trimming, to every
/// matching contiguous token subsequence. all_content_words additionally
/// matches each non-stopword text word against single tokens.
MentionExtraction extract_mentions(const std::string& text,
                                   const SaliencyRecord& record,
                                   MatchMode mode,
                                   const std::set<std::string>* stopwords =
                                       nullptr);

/// Fraction of quoted phrases, across all extractions, that matched the
/// input. Throws NoMentionsError when no phrase was found corpus-wide.
double citation_accuracy(const std::vector<MentionExtraction>& extractions);

/// Stricter variant counting only phrases cited with exact casing.
double citation_accuracy_case_exact(
    const std::vector<MentionExtraction>& extractions);

struct CoverageAtK {
  /// mean_cov[k-1]: mean positive coverage of (mentions ∩ top-k).
  std::vector<double> mean_cov;
  /// upper_bound[k-1]: mean positive coverage of the top-k tokens alone.
  std::vector<double> upper_bound;
};

/// Coverage+@k series over an aligned corpus. Records without positive
/// attribution mass are skipped. Throws AlignmentError on size mismatch.
CoverageAtK coverage_pos_at_k(const std::vector<Verbalization>& verbs,
                              const std::vector<SaliencyRecord>& records,
                              size_t max_k);

/// counts[k-1]: how many records mention their rank-k token (signed score,
/// descending, ties by lower index).
std::vector<size_t> rank_mention_counts(
    const std::vector<Verbalization>& verbs,
    const std::vector<SaliencyRecord>& records, size_t max_k);

struct FaithfulnessReport {
  size_t n_records = 0;
  double citation_accuracy = 0.0;
  double citation_accuracy_case_exact = 0.0;
  size_t n_phrases = 0;
  size_t n_unmatched = 0;
  CoverageAtK coverage_at_k;
  std::vector<size_t> rank_mentions;
};

/// Runs mention extraction over an aligned corpus and aggregates every
/// faithfulness statistic. Mentions come from the extraction, not from the
/// stored selections, so externally produced texts evaluate identically.
FaithfulnessReport evaluate_corpus(const std::vector<SaliencyRecord>& records,
                                   const std::vector<Verbalization>& verbs,
                                   size_t max_k,
                                   MatchMode mode = MatchMode::quoted_only);

const std::set<std::string>& builtin_stopwords();
std::set<std::string> load_stopwords(const std::string& path);

}  // namespace smv
