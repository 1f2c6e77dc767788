#pragma once

#include <cstdint>
#include <vector>

#include "smv/core.hpp"

namespace smv {

/// A 0/1 mask of window length c, applied at every offset of a saliency map.
struct BinaryFilter {
  std::vector<uint8_t> mask;
  int ones_count = 0;

  size_t size() const { return mask.size(); }
};

enum class CandidateSource { convolution, span, top_k };

std::string to_string(CandidateSource source);

/// Positions selected by one filter at one window offset, with their scores.
struct RawCandidate {
  TokenSelection indices;
  std::vector<double> values;
  CandidateSource source = CandidateSource::convolution;
  size_t window_offset = 0;
};

/// Every distinct permutation of i ones in a window of length c, for each
/// 2 <= i <= c-1. Ordered lexicographically descending by mask. Throws
/// InvalidWindowError for c < 3.
std::vector<BinaryFilter> convolution_filters(int window);

/// Centered contiguous runs of i ones for each odd i <= c (c odd). Ordered by
/// ascending run length. Throws InvalidWindowError for even c.
std::vector<BinaryFilter> span_filters(int window);

/// Slides every filter across the record at offsets 0..n-c inclusive and
/// emits one candidate per (filter, offset). Throws WindowTooLargeError if a
/// filter is longer than the record.
std::vector<RawCandidate> apply_filters(const SaliencyRecord& record,
                                        const std::vector<BinaryFilter>& filters,
                                        CandidateSource source);

}  // namespace smv
