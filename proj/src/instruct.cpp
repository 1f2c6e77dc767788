#include "smv/instruct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "smv/util.hpp"

namespace smv {

void PromptSpec::validate() const {
  if (instruction_template.find("{sample}") == std::string::npos ||
      instruction_template.find("{label_str}") == std::string::npos) {
    throw ValidationError(
        "instruction template must contain both {sample} and {label_str}");
  }
}

PromptSpec builtin_prompt_spec(const std::string& dataset) {
  PromptSpec spec;
  spec.dataset = dataset;
  if (dataset == "imdb") {
    spec.instruction_template =
        "Movie review with importance scores: {sample}.\n"
        "A sentiment analyzer has predicted this text as '{label_str} "
        "sentiment'. The scores behind each word indicate how important it "
        "was for the analyzer to predict '{label_str} sentiment'. The scores "
        "have been determined after the sentiment analyzer has already made "
        "its prediction. The sentiment analyzer cannot base its prediction "
        "on the scores, only on the movie review itself.\n"
        "Based on the importance scores, briefly explain why the sentiment "
        "analyzer has predicted this movie review as '{label_str} "
        "sentiment': ";
  } else if (dataset == "ag_news") {
    spec.instruction_template =
        "News article with importance scores: {sample}.\n"
        "A topic classifier has predicted this text as '{label_str}'. The "
        "scores behind each word indicate how important it was for the "
        "classifier to predict '{label_str}'. The scores have been "
        "determined after the topic classifier has already made its "
        "prediction. The topic classifier cannot base its prediction on the "
        "scores, only on the news article itself.\n"
        "Based on the importance scores, briefly explain why the topic "
        "classifier has predicted this news article as '{label_str}': ";
  } else {
    throw DatasetMismatchError("no built-in instruction for dataset '" +
                               dataset + "'");
  }
  return spec;
}

namespace {

std::string escape_token(const std::string& token) {
  std::string out;
  out.reserve(token.size());
  for (char c : token) {
    if (c == '\\' || c == '(' || c == ')') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string format_score(double score, int decimals) {
  double scale = std::pow(10.0, decimals);
  double rounded = std::round(std::abs(score) * scale) / scale;
  if (score < 0.0 && rounded != 0.0) rounded = -rounded;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  return buf;
}

void replace_all(std::string& text, const std::string& from,
                 const std::string& to) {
  size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

}  // namespace

std::string format_scored_text(const SaliencyRecord& record, int decimals) {
  std::string out;
  for (size_t i = 0; i < record.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += escape_token(record.tokens[i]);
    out += " (";
    out += format_score(record.scores[i], decimals);
    out.push_back(')');
  }
  return out;
}

std::vector<ScoredToken> parse_scored_text(const std::string& text) {
  std::vector<ScoredToken> out;
  std::string token;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    // Read the (escaped) token up to the unescaped " (" separator.
    token.clear();
    while (i < n) {
      if (text[i] == '\\' && i + 1 < n) {
        token.push_back(text[i + 1]);
        i += 2;
        continue;
      }
      if (text[i] == ' ' && i + 1 < n && text[i + 1] == '(') break;
      token.push_back(text[i]);
      ++i;
    }
    if (i >= n) {
      throw ParseError("scored text ends before a score bracket");
    }
    i += 2;  // " ("
    size_t close = text.find(')', i);
    if (close == std::string::npos) {
      throw ParseError("unterminated score bracket");
    }
    ScoredToken st;
    st.token = token;
    try {
      st.score = std::stod(text.substr(i, close - i));
    } catch (const std::exception&) {
      throw ParseError("invalid score '" + text.substr(i, close - i) + "'");
    }
    out.push_back(std::move(st));
    i = close + 1;
    if (i < n) {
      if (text[i] != ' ') throw ParseError("expected space between entries");
      ++i;
    }
  }
  return out;
}

std::string build_instruction(const SaliencyRecord& record,
                              const PromptSpec& spec) {
  if (record.dataset != spec.dataset) {
    throw DatasetMismatchError("record dataset '" + record.dataset +
                               "' does not match prompt spec for '" +
                               spec.dataset + "'");
  }
  spec.validate();
  std::string prompt = spec.instruction_template;
  replace_all(prompt, "{sample}",
              format_scored_text(record, spec.score_decimals));
  replace_all(prompt, "{label_str}", record.predicted_label);
  return prompt;
}

std::vector<std::string> LeakageTable::phrases_for(
    const std::string& label) const {
  std::vector<std::string> out;
  out.push_back(lower_ascii(label));
  auto it = phrases.find(lower_ascii(label));
  if (it != phrases.end()) {
    for (const std::string& p : it->second) out.push_back(lower_ascii(p));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LeakageTable builtin_leakage_table() {
  LeakageTable table;
  table.phrases["positive"] = {"positivity"};
  table.phrases["negative"] = {"negativity"};
  table.phrases["sports"] = {"sport", "the world of sports"};
  table.phrases["business"] = {
      "businesses",        "business and economics", "business and finance",
      "economics",         "finance",                "financial",
      "the business world", "the economy",           "corporate finance"};
  table.phrases["world"] = {
      "global",          "global politics",     "international",
      "all over the world", "global issues",    "global affairs",
      "international relations", "a global issue or event"};
  table.phrases["sci/tech"] = {
      "science",      "science and technology", "scientific",
      "tech",         "technical",              "technology",
      "technological", "the tech industry",     "the technology industry"};
  return table;
}

LeakageTable load_leakage_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open leakage table '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("leakage table '" + path + "': " + e.what());
  }
  LeakageTable table;
  if (doc.contains("placeholder")) {
    table.placeholder = doc["placeholder"].get<std::string>();
  }
  if (doc.contains("labels")) {
    for (const auto& [label, list] : doc["labels"].items()) {
      std::vector<std::string> phrases;
      for (const auto& p : list) {
        std::string lowered = lower_ascii(p.get<std::string>());
        if (!lowered.empty()) phrases.push_back(std::move(lowered));
      }
      std::sort(phrases.begin(), phrases.end());
      phrases.erase(std::unique(phrases.begin(), phrases.end()),
                    phrases.end());
      table.phrases[lower_ascii(label)] = std::move(phrases);
    }
  }
  return table;
}

namespace {

// Finds the next whole-word, case-insensitive occurrence of `phrase` in
// `text` starting at `from`. Both sides must sit on a word boundary.
size_t find_whole_word(const std::string& text, const std::string& phrase,
                       size_t from) {
  if (phrase.empty()) return std::string::npos;
  std::string haystack = lower_ascii(text);
  size_t pos = from;
  while ((pos = haystack.find(phrase, pos)) != std::string::npos) {
    bool left_ok =
        pos == 0 || !is_word_char(static_cast<unsigned char>(text[pos - 1]));
    size_t end = pos + phrase.size();
    bool right_ok = end >= text.size() ||
                    !is_word_char(static_cast<unsigned char>(text[end]));
    if (left_ok && right_ok) return pos;
    ++pos;
  }
  return std::string::npos;
}

}  // namespace

std::string postprocess_label_leakage(const std::string& text,
                                      const std::string& predicted_label,
                                      const LeakageTable& table) {
  std::string out = text;
  for (const std::string& phrase : table.phrases_for(predicted_label)) {
    size_t pos = 0;
    while ((pos = find_whole_word(out, phrase, pos)) != std::string::npos) {
      out.replace(pos, phrase.size(), table.placeholder);
      pos += table.placeholder.size();
    }
  }
  return out;
}

bool contains_leakage(const std::string& text,
                      const std::string& predicted_label,
                      const LeakageTable& table) {
  for (const std::string& phrase : table.phrases_for(predicted_label)) {
    if (find_whole_word(text, phrase, 0) != std::string::npos) return true;
  }
  return false;
}

}  // namespace smv
