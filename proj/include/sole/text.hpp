#pragma once

// Small tokenizing helpers shared by the file and script parsers.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sole/core.hpp"

namespace sole {

// Whitespace-separated tokens; everything from '#' on is a comment.
inline std::vector<std::string> split_tokens(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::int64_t parse_int(std::string_view token) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InputError("expected an integer, got '" + std::string(token) + "'");
  }
  return value;
}

inline void expect_arity(const std::vector<std::string>& tokens, std::size_t n) {
  if (tokens.size() != n) {
    throw InputError("'" + tokens[0] + "' takes " + std::to_string(n - 1) + " argument(s)");
  }
}

}  // namespace sole
