#include "smv/realize.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "smv/util.hpp"

namespace smv {

namespace {

std::set<int> distinct_slots(const std::string& pattern) {
  std::set<int> slots;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '{') continue;
    size_t close = pattern.find('}', i + 1);
    if (close == std::string::npos || close == i + 1) continue;
    bool digits = true;
    for (size_t j = i + 1; j < close; ++j) {
      if (!std::isdigit(static_cast<unsigned char>(pattern[j]))) {
        digits = false;
        break;
      }
    }
    if (digits) slots.insert(std::stoi(pattern.substr(i + 1, close - i - 1)));
  }
  return slots;
}

Template make(std::string id, int arity, std::string dataset,
              TemplateCategory category, std::string pattern) {
  Template t;
  t.id = std::move(id);
  t.arity = arity;
  t.dataset_tag = std::move(dataset);
  t.category = category;
  t.pattern = std::move(pattern);
  return t;
}

}  // namespace

void TemplateBank::validate() const {
  std::set<std::string> ids;
  bool arity_seen[4] = {false, false, false, false};
  for (const Template& t : templates) {
    if (t.pattern.empty()) {
      throw ParseError("template '" + t.id + "' has an empty pattern");
    }
    if (t.arity < 1) {
      throw ArityMismatchError("template '" + t.id + "' has arity " +
                               std::to_string(t.arity));
    }
    std::set<int> slots = distinct_slots(t.pattern);
    std::set<int> expected;
    for (int s = 0; s < t.arity; ++s) expected.insert(s);
    if (slots != expected) {
      throw ArityMismatchError(
          "template '" + t.id + "' declares arity " + std::to_string(t.arity) +
          " but its pattern does not use exactly the slots {0}..{" +
          std::to_string(t.arity - 1) + "}");
    }
    if (!ids.insert(t.id).second) {
      throw ParseError("duplicate template id '" + t.id + "'");
    }
    if (t.arity <= 3) arity_seen[t.arity] = true;
  }
  for (int a = 1; a <= 3; ++a) {
    if (!arity_seen[a]) {
      throw ArityMismatchError("bank has no template of arity " +
                               std::to_string(a));
    }
  }
}

TemplateBank builtin_bank() {
  using C = TemplateCategory;
  TemplateBank bank;
  auto& t = bank.templates;

  // Generic leading sentences.
  t.push_back(make("words-important", 1, "", C::leading,
                   "The words {0} are most important."));
  t.push_back(make("most-important-is", 1, "", C::leading,
                   "Most important is {0}."));
  t.push_back(make("span-most-important", 1, "", C::leading,
                   "{0} is the span that was most important."));
  t.push_back(make("salient-features", 1, "", C::leading,
                   "The most salient features are {0}."));
  t.push_back(make("predicted-because", 1, "", C::leading,
                   "The model predicted this label, because {0}."));
  t.push_back(make("focused-most", 1, "", C::leading,
                   "The model focused on {0} the most for this prediction."));
  t.push_back(make("caused-outcome", 1, "", C::leading,
                   "{0} caused the model to predict this outcome."));
  t.push_back(make("key-tokens", 1, "", C::leading,
                   "The key tokens in this text are {0}."));

  // Two units.
  t.push_back(make("two-phrases", 2, "", C::conjunction,
                   "The two phrases {0} and {1} are most important."));
  t.push_back(make("both-salient", 2, "", C::conjunction,
                   "Both phrases {0} and {1} are salient."));
  t.push_back(make("while-also", 2, "", C::conjunction,
                   "{0} is most important, while {1} is also salient."));
  t.push_back(make("whereas-impactful", 2, "", C::conjunction,
                   "{0} is most influential, whereas {1} is also impactful."));
  t.push_back(make("shaped-with-also", 2, "", C::conjunction,
                   "The words {0} shaped the model's outcome the most, "
                   "with {1} also being salient."));
  t.push_back(make("more-salient-than", 2, "", C::polarity,
                   "{0} is more salient than {1}."));
  t.push_back(make("less-influential-than", 2, "", C::polarity,
                   "{1} is less influential than {0}."));

  // Three units.
  t.push_back(make("three-words", 3, "", C::leading,
                   "The words {0}, {1}, and {2} are most important."));
  t.push_back(make("top-three", 3, "", C::leading,
                   "The top three most important tokens are {0}, {1}, "
                   "and {2}."));
  t.push_back(make("such-as-with", 3, "", C::conjunction,
                   "The model based its prediction on words such as {0} "
                   "and {1}, with {2} also being salient."));
  t.push_back(make("three-salient-features", 3, "", C::leading,
                   "The most salient features are {0}, {1}, and {2}."));

  // IMDb-specific.
  t.push_back(make("imdb-indicative", 1, "imdb", C::dataset_specific,
                   "The words {0} are most indicative of the sentiment."));
  t.push_back(make("imdb-sentiment-label", 1, "imdb", C::dataset_specific,
                   "{0} is most important for the sentiment label."));
  t.push_back(make("imdb-analysis", 1, "imdb", C::dataset_specific,
                   "The words {0} are most indicative for the sentiment "
                   "analysis."));
  t.push_back(make("imdb-used-to-predict", 2, "imdb", C::dataset_specific,
                   "The phrases {0} and {1} were used by the model to "
                   "predict this sentiment label."));
  t.push_back(make("imdb-three-indicative", 3, "imdb", C::dataset_specific,
                   "The words {0}, {1}, and {2} are most indicative of "
                   "the sentiment."));

  // AG News-specific.
  t.push_back(make("ag-salient-article", 1, "ag_news", C::dataset_specific,
                   "The most salient words in this article are {0}."));
  t.push_back(make("ag-topic", 1, "ag_news", C::dataset_specific,
                   "The words {0} are indicative of the model's topic "
                   "classification."));
  t.push_back(make("ag-because-article", 1, "ag_news", C::dataset_specific,
                   "The model predicted this label, because {0} appeared "
                   "in the article."));
  t.push_back(make("ag-two-in-article", 2, "ag_news", C::dataset_specific,
                   "The two phrases {0} and {1} are most important in "
                   "this article."));
  t.push_back(make("ag-three-salient", 3, "ag_news", C::dataset_specific,
                   "The most salient words in this article are {0}, {1}, "
                   "and {2}."));

  bank.validate();
  return bank;
}

TemplateBank load_bank(const std::optional<std::string>& path) {
  if (!path) return builtin_bank();
  std::ifstream in(*path);
  if (!in) throw ParseError("cannot open template file '" + *path + "'");

  TemplateBank bank;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4) {
      throw ParseError("expected 4 tab-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    Template t;
    t.id = fields[0];
    try {
      t.arity = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw ParseError("arity '" + fields[1] + "' is not an integer", line_no);
    }
    t.dataset_tag = fields[2] == "-" ? "" : fields[2];
    t.pattern = fields[3];
    t.category = t.dataset_tag.empty() ? TemplateCategory::leading
                                       : TemplateCategory::dataset_specific;
    bank.templates.push_back(std::move(t));
  }
  bank.validate();
  return bank;
}

namespace {

std::string render_span_text(const MergedSpan& span,
                             const SaliencyRecord& record) {
  std::string out;
  for (size_t i : span.indices.indices()) {
    if (!out.empty()) out.push_back(' ');
    out += display_token(record.tokens[i]);
  }
  return out;
}

std::string quote_span(const std::string& text) {
  // Prefer straight single quotes; switch to double quotes when the span
  // itself contains one, so the citation stays recoverable.
  char q = text.find('\'') == std::string::npos ? '\'' : '"';
  std::string out;
  out.push_back(q);
  out += text;
  out.push_back(q);
  return out;
}

std::string fill_pattern(const std::string& pattern,
                         const std::vector<std::string>& args) {
  std::string out;
  for (size_t i = 0; i < pattern.size();) {
    if (pattern[i] == '{') {
      size_t close = pattern.find('}', i + 1);
      if (close != std::string::npos && close > i + 1) {
        bool digits = true;
        for (size_t j = i + 1; j < close; ++j) {
          if (!std::isdigit(static_cast<unsigned char>(pattern[j]))) {
            digits = false;
            break;
          }
        }
        if (digits) {
          auto slot = static_cast<size_t>(
              std::stoi(pattern.substr(i + 1, close - i - 1)));
          out += args.at(slot);
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(pattern[i]);
    ++i;
  }
  return out;
}

}  // namespace

Verbalization realize(const std::vector<MergedSpan>& spans,
                      const SaliencyRecord& record, const TemplateBank& bank,
                      uint64_t seed) {
  if (spans.empty()) {
    throw NoSpansError("realize needs at least one span");
  }

  // Keep at most three spans, dropping the lowest coverage first but
  // preserving the caller's order among survivors.
  std::vector<MergedSpan> kept = spans;
  while (kept.size() > 3) {
    auto lowest = std::min_element(
        kept.begin(), kept.end(), [](const MergedSpan& a, const MergedSpan& b) {
          return a.coverage_positive < b.coverage_positive;
        });
    kept.erase(lowest);
  }
  const auto arity = static_cast<int>(kept.size());

  // Polarity templates state a comparative claim, so they are only eligible
  // when span coverages are strictly decreasing.
  bool strictly_decreasing = true;
  for (size_t i = 1; i < kept.size(); ++i) {
    if (!(kept[i - 1].coverage_positive > kept[i].coverage_positive)) {
      strictly_decreasing = false;
      break;
    }
  }

  std::vector<const Template*> tagged;
  std::vector<const Template*> generic;
  for (const Template& t : bank.templates) {
    if (t.arity != arity) continue;
    if (t.category == TemplateCategory::polarity && !strictly_decreasing) {
      continue;
    }
    if (t.dataset_tag.empty()) {
      generic.push_back(&t);
    } else if (t.dataset_tag == record.dataset) {
      tagged.push_back(&t);
    }
  }
  const auto& eligible = tagged.empty() ? generic : tagged;
  if (eligible.empty()) {
    throw NoTemplateForArityError("no template of arity " +
                                  std::to_string(arity) + " for dataset '" +
                                  record.dataset + "'");
  }

  // Rotation is keyed by (record id, seed) so corpora vary but stay
  // reproducible.
  uint64_t key = splitmix64(fnv1a64(record.id) ^ splitmix64(seed));
  const Template& chosen = *eligible[key % eligible.size()];

  // Polarity claims need the coverage-descending order; everything else
  // reads in input order.
  std::vector<const MergedSpan*> ordered;
  for (const MergedSpan& s : kept) ordered.push_back(&s);
  if (chosen.category != TemplateCategory::polarity) {
    std::sort(ordered.begin(), ordered.end(),
              [](const MergedSpan* a, const MergedSpan* b) {
                return a->indices.indices().front() <
                       b->indices.indices().front();
              });
  }

  std::vector<std::string> args;
  TokenSelection mentioned;
  for (const MergedSpan* span : ordered) {
    args.push_back(quote_span(render_span_text(*span, record)));
    mentioned = mentioned.unite(span->indices);
  }

  Verbalization verb;
  verb.record_id = record.id;
  verb.text = fill_pattern(chosen.pattern, args);
  verb.mentioned = mentioned;
  verb.method = VerbalizationMethod::template_based;
  verb.coverage = coverage(record, mentioned);
  verb.coverage_positive = coverage_positive(record, mentioned);
  verb.provenance["template_id"] = chosen.id;
  verb.provenance["seed"] = std::to_string(seed);
  return verb;
}

}  // namespace smv
