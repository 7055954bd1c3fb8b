#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace premsel {

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error("malformed number '" + std::string(text) + "'");
  return value;
}

template <typename Int>
Int parse_integer(std::string_view text, int base = 10) {
  Int value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::runtime_error("malformed integer '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Whitespace-separated words of the next line; throws at end of input.
inline std::vector<std::string> read_words(std::istream& in, std::string_view what) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("unexpected end of model file reading " + std::string(what));
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

inline void expect_words(const std::vector<std::string>& words, std::string_view tag,
                         std::size_t min_size) {
  if (words.empty() || words[0] != tag || words.size() < min_size)
    throw std::runtime_error("malformed model file: expected '" + std::string(tag) + "' line");
}

}  // namespace premsel
