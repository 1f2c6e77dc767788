#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "smv/errors.hpp"

namespace smv {

/// One explained instance: tokens, per-token attribution scores, predicted
/// and true labels, and the label inventory of the task.
struct SaliencyRecord {
  std::string id;
  std::string dataset;
  std::vector<std::string> tokens;
  std::vector<double> scores;
  std::string predicted_label;
  std::string true_label;
  std::vector<std::string> label_set;

  size_t size() const { return tokens.size(); }

  /// Throws ValidationError unless tokens/scores are non-empty and aligned,
  /// every score is finite, and both labels belong to the label set.
  void validate() const;
};

/// A strictly increasing set of token positions.
class TokenSelection {
 public:
  TokenSelection() = default;

  /// Indices must already be strictly increasing.
  explicit TokenSelection(std::vector<size_t> indices);

  /// Sorts and deduplicates.
  static TokenSelection from_unsorted(std::vector<size_t> indices);

  const std::vector<size_t>& indices() const { return indices_; }
  size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(size_t index) const;

  /// Throws ValidationError if any index >= n.
  void check_bounds(size_t n) const;

  TokenSelection intersect(const TokenSelection& other) const;
  TokenSelection unite(const TokenSelection& other) const;

  bool operator==(const TokenSelection& other) const = default;

 private:
  std::vector<size_t> indices_;
};

enum class VerbalizationMethod { template_based, instructed, external };

std::string to_string(VerbalizationMethod method);
VerbalizationMethod verbalization_method_from_string(const std::string& s);

/// A produced explanation text plus the token indices it references.
struct Verbalization {
  std::string record_id;
  std::string text;
  TokenSelection mentioned;
  VerbalizationMethod method = VerbalizationMethod::template_based;
  double coverage = 0.0;
  double coverage_positive = 0.0;
  std::map<std::string, std::string> provenance;
};

/// Ranking mode for top-k selection: by signed score over all tokens, or
/// restricted to tokens with positive attribution.
enum class Polarity { signed_scores, positive_only };

/// Total attribution mass of the map, sum of |s_i| (L1).
double attribution_mass(const SaliencyRecord& record);

/// Fraction of total attribution mass carried by the selected tokens.
/// Throws ZeroMassError when the map has no mass at all.
double coverage(const SaliencyRecord& record, const TokenSelection& sel);

/// Positive-only coverage: selected positive mass over total positive mass.
/// Throws ZeroMassError when no score is positive.
double coverage_positive(const SaliencyRecord& record,
                         const TokenSelection& sel);

/// Indices of the min(k, n) highest-scoring tokens, ties broken by lower
/// index. positive_only restricts candidates to tokens with score > 0.
TokenSelection top_k_indices(const SaliencyRecord& record, size_t k,
                             Polarity polarity);

}  // namespace smv
