#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "smv/instruct.hpp"
#include "smv/util.hpp"

namespace smv {

namespace {

bool is_transient(int status) {
  return status == 408 || status == 429 || status >= 500;
}

}  // namespace

ChatClient::ChatClient(ChatEndpointConfig config)
    : config_(std::move(config)) {
  sleeper = [](double seconds) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
  };
}

std::string ChatClient::cache_path(const std::string& prompt) const {
  uint64_t h1 = fnv1a64(config_.model + "\n" + prompt);
  uint64_t h2 = fnv1a64(prompt + "\n" + config_.model);
  char name[48];
  std::snprintf(name, sizeof(name), "%016llx%016llx.txt",
                static_cast<unsigned long long>(h1),
                static_cast<unsigned long long>(h2));
  return (std::filesystem::path(config_.cache_dir) / name).string();
}

std::optional<std::string> ChatClient::cache_lookup(
    const std::string& prompt) const {
  if (config_.cache_dir.empty()) return std::nullopt;
  std::ifstream in(cache_path(prompt), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ChatClient::cache_store(const std::string& prompt,
                             const std::string& text) const {
  if (config_.cache_dir.empty()) return;
  std::filesystem::create_directories(config_.cache_dir);
  std::ofstream out(cache_path(prompt), std::ios::binary);
  out << text;
}

std::string ChatClient::request_verbalization(const std::string& prompt) {
  if (auto cached = cache_lookup(prompt)) return *cached;

  nlohmann::json body = {
      {"model", config_.model},
      {"temperature", config_.temperature},
      {"max_tokens", config_.max_output_tokens},
      {"messages",
       nlohmann::json::array(
           {nlohmann::json{{"role", "user"}, {"content", prompt}}})},
  };
  const std::string payload = body.dump();

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
  client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      sleeper(config_.initial_backoff_s * std::pow(2.0, attempt - 1));
    }
    ++requests_sent_;
    httplib::Result res =
        client.Post(config_.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("endpoint rejected credentials (HTTP " +
                      std::to_string(res->status) + ")");
    }
    if (is_transient(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw EndpointError("endpoint returned HTTP " +
                          std::to_string(res->status) + ": " + res->body);
    }
    try {
      nlohmann::json doc = nlohmann::json::parse(res->body);
      std::string text =
          doc.at("choices").at(0).at("message").at("content").get<std::string>();
      cache_store(prompt, text);
      return text;
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(std::string("malformed endpoint response: ") +
                          e.what());
    }
  }
  throw EndpointError("request failed after " +
                      std::to_string(config_.max_retries + 1) +
                      " attempts; last failure: " + last_error);
}

}  // namespace smv
