#include "repoprint/features/text.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

namespace repoprint::features {
namespace {

// 40 words, kept sorted for binary search.
constexpr std::array<std::string_view, 40> kStopwords = {
    "about", "an",   "and",   "are",  "as",   "at",   "be",    "but",
    "by",    "can",  "do",    "for",  "from", "has",  "have",  "in",
    "into",  "is",   "it",    "its",  "no",   "not",  "of",    "on",
    "or",    "our",  "so",    "that", "the",  "their", "then", "there",
    "these", "this", "to",    "was",  "we",   "which", "with", "you",
};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

TextTranslator identity_translator() {
  return [](std::string_view text) { return std::string(text); };
}

TextTranslator command_translator(std::string command) {
  return [command = std::move(command)](std::string_view text) -> std::string {
    namespace fs = std::filesystem;
    static thread_local std::mt19937_64 name_rng{std::random_device{}()};
    const fs::path tmp =
        fs::temp_directory_path() /
        ("repoprint-translate-" + std::to_string(name_rng()) + ".txt");
    {
      std::ofstream out(tmp, std::ios::binary);
      out.write(text.data(), static_cast<std::streamsize>(text.size()));
    }
    const std::string cmd = command + " < '" + tmp.string() + "'";
    std::string result;
    bool ok = false;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
      char buf[4096];
      std::size_t n = 0;
      while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) result.append(buf, n);
      ok = pclose(pipe) == 0;
    }
    std::error_code ec;
    fs::remove(tmp, ec);
    if (!ok) return std::string(text);
    while (!result.empty() && (result.back() == '\n' || result.back() == '\r')) {
      result.pop_back();
    }
    return result;
  };
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  bool pending = false;
  for (char c : text) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out += ' ';
      pending = false;
    }
    out += c;
  }
  return out;
}

bool is_stopword(std::string_view token) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), token);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !is_stopword(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c >= 'A' && c <= 'Z') {
      cur += static_cast<char>(c - 'A' + 'a');
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      cur += c;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace repoprint::features
