#include "smv/search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace smv {

std::string to_string(CandidateSource source) {
  switch (source) {
    case CandidateSource::convolution:
      return "convolution";
    case CandidateSource::span:
      return "span";
    case CandidateSource::top_k:
      return "top_k";
  }
  return "convolution";
}

namespace {

BinaryFilter make_filter(std::vector<uint8_t> mask) {
  BinaryFilter f;
  f.ones_count = static_cast<int>(
      std::count(mask.begin(), mask.end(), static_cast<uint8_t>(1)));
  f.mask = std::move(mask);
  return f;
}

}  // namespace

std::vector<BinaryFilter> convolution_filters(int window) {
  if (window < 3) {
    throw InvalidWindowError(
        "convolution window must be >= 3, got " + std::to_string(window) +
        " (no ones-count satisfies 2 <= i <= c-1)");
  }
  // Enumerate all c-bit masks, keep those with 2 <= popcount <= c-1.
  // Building the mask with bit (c-1-b) as position b makes numeric order on
  // the integer equal lexicographic order on the mask, so iterating the
  // integers downward yields lexicographically descending masks.
  std::vector<BinaryFilter> filters;
  const int c = window;
  for (uint64_t bits = (uint64_t{1} << c) - 1; bits > 0; --bits) {
    int pop = std::popcount(bits);
    if (pop < 2 || pop > c - 1) continue;
    std::vector<uint8_t> mask(c, 0);
    for (int pos = 0; pos < c; ++pos) {
      if (bits & (uint64_t{1} << (c - 1 - pos))) mask[pos] = 1;
    }
    filters.push_back(make_filter(std::move(mask)));
  }
  return filters;
}

std::vector<BinaryFilter> span_filters(int window) {
  if (window < 1 || window % 2 == 0) {
    throw InvalidWindowError("span window must be odd and >= 1, got " +
                             std::to_string(window));
  }
  std::vector<BinaryFilter> filters;
  for (int i = 1; i <= window; i += 2) {
    int pad = (window - i) / 2;
    std::vector<uint8_t> mask(window, 0);
    std::fill(mask.begin() + pad, mask.begin() + pad + i,
              static_cast<uint8_t>(1));
    filters.push_back(make_filter(std::move(mask)));
  }
  return filters;
}

std::vector<RawCandidate> apply_filters(const SaliencyRecord& record,
                                        const std::vector<BinaryFilter>& filters,
                                        CandidateSource source) {
  const size_t n = record.size();
  std::vector<RawCandidate> candidates;
  for (const BinaryFilter& filter : filters) {
    const size_t c = filter.size();
    if (c > n) {
      throw WindowTooLargeError(
          "filter window " + std::to_string(c) + " exceeds record length " +
          std::to_string(n));
    }
    for (size_t offset = 0; offset + c <= n; ++offset) {
      RawCandidate cand;
      cand.source = source;
      cand.window_offset = offset;
      std::vector<size_t> indices;
      indices.reserve(filter.ones_count);
      cand.values.reserve(filter.ones_count);
      for (size_t j = 0; j < c; ++j) {
        if (filter.mask[j]) {
          indices.push_back(offset + j);
          cand.values.push_back(record.scores[offset + j]);
        }
      }
      cand.indices = TokenSelection(std::move(indices));
      candidates.push_back(std::move(cand));
    }
  }
  return candidates;
}

}  // namespace smv
