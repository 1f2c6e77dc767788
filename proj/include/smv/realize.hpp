#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smv/select.hpp"

namespace smv {

enum class TemplateCategory { leading, conjunction, polarity, dataset_specific };

/// One surface pattern with numbered slots {0}, {1}, ... Each slot consumes
/// one selected span.
struct Template {
  std::string id;
  int arity = 1;
  std::string dataset_tag;  // empty when the template is dataset-agnostic
  std::string pattern;
  TemplateCategory category = TemplateCategory::leading;
};

struct TemplateBank {
  std::vector<Template> templates;
  uint64_t rng_seed = 0;

  /// Throws unless ids are unique, slot counts match arities, and every
  /// arity 1..3 has at least one template.
  void validate() const;
};

/// The built-in bank of hand-written patterns, including dataset-specific
/// wordings for imdb and ag_news.
TemplateBank builtin_bank();

/// Loads a bank from a tab-separated file (id, arity, dataset_tag or "-",
/// pattern per line; '#' starts a comment). No path returns the built-in
/// bank.
TemplateBank load_bank(const std::optional<std::string>& path);

/// Fills a template with the given spans. Uses at most three spans (extras
/// dropped lowest-coverage-first); the template is chosen pseudo-randomly
/// from the bank, seeded by (record id, seed), preferring templates tagged
/// for the record's dataset. Span text is quoted verbatim, so the result
/// cites only tokens that exist in the record.
Verbalization realize(const std::vector<MergedSpan>& spans,
                      const SaliencyRecord& record, const TemplateBank& bank,
                      uint64_t seed);

}  // namespace smv
