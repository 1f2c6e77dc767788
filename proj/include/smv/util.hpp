#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace smv {

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

inline bool is_word_char(unsigned char c) {
  return std::isalnum(c) != 0;
}

/// Collapses runs of whitespace to single spaces and trims the edges.
inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

/// Strips ASCII punctuation and whitespace from both ends.
inline std::string trim_edge_punct(std::string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  auto strippable = [](unsigned char c) {
    return std::isspace(c) || std::ispunct(c);
  };
  while (begin < end && strippable(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && strippable(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return std::string(s.substr(begin, end - begin));
}

/// Surface form of a token: subword continuation markers are dropped.
inline std::string display_token(std::string_view token) {
  if (token.size() > 2 && token.substr(0, 2) == "##") {
    return std::string(token.substr(2));
  }
  return std::string(token);
}

}  // namespace smv
