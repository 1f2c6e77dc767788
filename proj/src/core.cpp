#include "smv/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smv {

void SaliencyRecord::validate() const {
  if (tokens.empty()) {
    throw ValidationError("record '" + id + "': empty token list");
  }
  if (tokens.size() != scores.size()) {
    throw ValidationError("record '" + id + "': " +
                          std::to_string(tokens.size()) + " tokens but " +
                          std::to_string(scores.size()) + " scores");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw ValidationError("record '" + id + "': non-finite score");
    }
  }
  auto in_set = [&](const std::string& label) {
    return std::find(label_set.begin(), label_set.end(), label) !=
           label_set.end();
  };
  if (!in_set(predicted_label)) {
    throw ValidationError("record '" + id + "': predicted label '" +
                          predicted_label + "' not in label set");
  }
  if (!in_set(true_label)) {
    throw ValidationError("record '" + id + "': true label '" + true_label +
                          "' not in label set");
  }
}

TokenSelection::TokenSelection(std::vector<size_t> indices)
    : indices_(std::move(indices)) {
  for (size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i] <= indices_[i - 1]) {
      throw ValidationError("token selection is not strictly increasing");
    }
  }
}

TokenSelection TokenSelection::from_unsorted(std::vector<size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  TokenSelection sel;
  sel.indices_ = std::move(indices);
  return sel;
}

bool TokenSelection::contains(size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

void TokenSelection::check_bounds(size_t n) const {
  if (!indices_.empty() && indices_.back() >= n) {
    throw ValidationError("selection index " +
                          std::to_string(indices_.back()) +
                          " out of range for " + std::to_string(n) +
                          " tokens");
  }
}

TokenSelection TokenSelection::intersect(const TokenSelection& other) const {
  std::vector<size_t> out;
  std::set_intersection(indices_.begin(), indices_.end(),
                        other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(out));
  TokenSelection sel;
  sel.indices_ = std::move(out);
  return sel;
}

TokenSelection TokenSelection::unite(const TokenSelection& other) const {
  std::vector<size_t> out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(),
                 other.indices_.end(), std::back_inserter(out));
  TokenSelection sel;
  sel.indices_ = std::move(out);
  return sel;
}

std::string to_string(VerbalizationMethod method) {
  switch (method) {
    case VerbalizationMethod::template_based:
      return "template";
    case VerbalizationMethod::instructed:
      return "instructed";
    case VerbalizationMethod::external:
      return "external";
  }
  return "template";
}

VerbalizationMethod verbalization_method_from_string(const std::string& s) {
  if (s == "template") return VerbalizationMethod::template_based;
  if (s == "instructed") return VerbalizationMethod::instructed;
  if (s == "external") return VerbalizationMethod::external;
  throw ValidationError("unknown verbalization method '" + s + "'");
}

double attribution_mass(const SaliencyRecord& record) {
  double mass = 0.0;
  for (double s : record.scores) mass += std::abs(s);
  return mass;
}

double coverage(const SaliencyRecord& record, const TokenSelection& sel) {
  sel.check_bounds(record.size());
  double mass = attribution_mass(record);
  if (mass == 0.0) {
    throw ZeroMassError("record '" + record.id +
                        "': all scores are zero, coverage undefined");
  }
  double selected = 0.0;
  for (size_t i : sel.indices()) selected += std::abs(record.scores[i]);
  return selected / mass;
}

double coverage_positive(const SaliencyRecord& record,
                         const TokenSelection& sel) {
  sel.check_bounds(record.size());
  double positive_mass = 0.0;
  for (double s : record.scores) {
    if (s > 0.0) positive_mass += s;
  }
  if (positive_mass == 0.0) {
    throw ZeroMassError("record '" + record.id +
                        "': no positive scores, positive coverage undefined");
  }
  double selected = 0.0;
  for (size_t i : sel.indices()) {
    if (record.scores[i] > 0.0) selected += record.scores[i];
  }
  return selected / positive_mass;
}

TokenSelection top_k_indices(const SaliencyRecord& record, size_t k,
                             Polarity polarity) {
  std::vector<size_t> order;
  order.reserve(record.size());
  for (size_t i = 0; i < record.size(); ++i) {
    if (polarity == Polarity::positive_only && record.scores[i] <= 0.0) {
      continue;
    }
    order.push_back(i);
  }
  // Higher score first; equal scores keep the lower index.
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return record.scores[a] > record.scores[b];
  });
  if (order.size() > k) order.resize(k);
  return TokenSelection::from_unsorted(std::move(order));
}

}  // namespace smv
