#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smv/core.hpp"

namespace smv {

/// Per-dataset instruction template with {sample} and {label_str} slots.
struct PromptSpec {
  std::string dataset;
  std::string instruction_template;
  int score_decimals = 2;

  void validate() const;
};

/// Built-in instructions for the imdb and ag_news datasets. Throws
/// DatasetMismatchError for anything else.
PromptSpec builtin_prompt_spec(const std::string& dataset);

/// Tokens joined by single spaces, each followed by its bracketed score
/// rounded half-away-from-zero to the given decimals, e.g. "girl (-0.31)".
/// Backslashes and parentheses inside tokens are backslash-escaped so the
/// format stays parseable.
std::string format_scored_text(const SaliencyRecord& record, int decimals = 2);

struct ScoredToken {
  std::string token;
  double score = 0.0;
};

/// Reference parser for the scored-text format. Kept independent of the
/// writer: it scans for unescaped " (" separators and closing brackets.
std::vector<ScoredToken> parse_scored_text(const std::string& text);

/// Fills {sample} with the scored text and every {label_str} with the
/// predicted label. Throws DatasetMismatchError when the record belongs to a
/// different dataset than the spec.
std::string build_instruction(const SaliencyRecord& record,
                              const PromptSpec& spec);

/// Forbidden phrases per label (lowercase), replaced by the placeholder to
/// prevent the generated explanation from leaking the predicted label.
struct LeakageTable {
  std::map<std::string, std::vector<std::string>> phrases;
  std::string placeholder = "{placeholder}";

  /// Phrases to scrub for a label: the label string itself plus the table
  /// entries, longest first.
  std::vector<std::string> phrases_for(const std::string& label) const;
};

/// The built-in substitution lists for imdb and ag_news labels.
LeakageTable builtin_leakage_table();

/// Loads a table from JSON: {"placeholder": "...", "labels": {label: [...]}}.
LeakageTable load_leakage_table(const std::string& path);

/// Case-insensitive, whole-word, longest-phrase-first replacement of every
/// forbidden phrase with the placeholder. Idempotent.
std::string postprocess_label_leakage(const std::string& text,
                                      const std::string& predicted_label,
                                      const LeakageTable& table);

/// True if any forbidden phrase for the label still occurs (whole-word,
/// case-insensitive). Used by tests and the scrub property check.
bool contains_leakage(const std::string& text,
                      const std::string& predicted_label,
                      const LeakageTable& table);

struct ChatEndpointConfig {
  std::string base_url;  // e.g. "https://api.example.com"
  std::string path = "/v1/chat/completions";
  std::string model;
  double temperature = 0.0;
  int max_output_tokens = 256;
  std::string api_key_env = "SMV_API_KEY";
  std::string cache_dir;  // empty disables the on-disk cache
  int max_retries = 5;
  double initial_backoff_s = 0.5;
  double timeout_s = 30.0;
};

/// Minimal chat-completion client: single user message, first choice
/// consumed. Retries transient failures (connect errors, 408/429/5xx) with
/// exponential backoff; 401/403 fail immediately. Responses are cached on
/// disk keyed by (model, prompt) when a cache dir is configured.
class ChatClient {
 public:
  explicit ChatClient(ChatEndpointConfig config);

  std::string request_verbalization(const std::string& prompt);

  /// Injectable sleep, for tests.
  std::function<void(double)> sleeper;

  /// Requests actually sent over the wire (cache hits excluded).
  size_t requests_sent() const { return requests_sent_; }

 private:
  std::optional<std::string> cache_lookup(const std::string& prompt) const;
  void cache_store(const std::string& prompt, const std::string& text) const;
  std::string cache_path(const std::string& prompt) const;

  ChatEndpointConfig config_;
  size_t requests_sent_ = 0;
};

}  // namespace smv
