// Copyright 2026 The kgqa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kgqa/text.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace kgqa {
namespace {

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)); }
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }

int HexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Sorted for binary search.
constexpr auto kStopWords = std::to_array<std::string_view>({
    "a",    "about", "all",  "also", "am",   "an",    "and",   "any",
    "are",  "as",    "at",   "be",   "been", "being", "both",  "by",
    "can",  "could", "did",  "do",   "does", "for",   "from",  "give",
    "had",  "has",   "have", "her",  "his",  "how",   "in",    "into",
    "is",   "it",    "its",  "list", "many", "may",   "me",    "might",
    "much", "must",  "name", "of",   "on",   "or",    "shall", "should",
    "show", "tell",  "than", "that", "the",  "their", "there", "this",
    "to",   "was",   "were", "what", "when", "where", "which", "who",
    "whom", "whose", "why",  "with",
});
static_assert(std::ranges::is_sorted(kStopWords));

constexpr auto kQuestionStarters = std::to_array<std::string_view>({
    "are",  "at",   "by",    "can",   "did",  "do",   "does",  "for",
    "from", "give", "has",   "have",  "how",  "in",   "is",    "list",
    "name", "of",   "on",    "show",  "tell", "to",   "was",   "were",
    "what", "when", "where", "which", "who",  "whom", "whose", "why",
});
static_assert(std::ranges::is_sorted(kQuestionStarters));

}  // namespace

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (IsAlnum(c)) {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::string NormalizeText(std::string_view text) {
  std::string out;
  for (const std::string &w : Words(text)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

std::vector<std::string> SplitIdentifier(std::string_view identifier) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) {
      words.push_back(ToLower(current));
      current.clear();
    }
  };
  for (size_t i = 0; i < identifier.size(); ++i) {
    char c = identifier[i];
    if (!IsAlnum(c)) {
      flush();
      continue;
    }
    if (IsUpper(c) && !current.empty()) {
      char prev = current.back();
      bool next_lower = i + 1 < identifier.size() && IsLower(identifier[i + 1]);
      // "dateOfBirth" splits before 'O'; "HTMLParser" splits before 'P'.
      if (IsLower(prev) || (IsUpper(prev) && next_lower)) flush();
    }
    current.push_back(c);
  }
  flush();
  return words;
}

std::string LocalName(std::string_view iri) {
  size_t cut = iri.find_last_of("/#");
  std::string_view local =
      cut == std::string_view::npos ? iri : iri.substr(cut + 1);
  std::string out;
  for (size_t i = 0; i < local.size(); ++i) {
    if (local[i] == '%' && i + 2 < local.size()) {
      int hi = HexValue(local[i + 1]);
      int lo = HexValue(local[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(local[i]);
  }
  return out;
}

std::string LabelFromIri(std::string_view iri) {
  std::string label;
  for (const std::string &w : SplitIdentifier(LocalName(iri))) {
    if (!label.empty()) label.push_back(' ');
    label += w;
  }
  return label;
}

bool IsStopWord(std::string_view lowercase_word) {
  return std::binary_search(kStopWords.begin(), kStopWords.end(),
                            lowercase_word);
}

std::vector<std::string> ContentWords(std::string_view text) {
  std::vector<std::string> words = Words(text);
  std::erase_if(words, [](const std::string &w) { return IsStopWord(w); });
  return words;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '?' && c != '!') continue;
    bool at_break = i + 1 == text.size() ||
                    std::isspace(static_cast<unsigned char>(text[i + 1]));
    if (!at_break) continue;
    std::string_view sentence = Trim(text.substr(start, i + 1 - start));
    if (!sentence.empty()) sentences.emplace_back(sentence);
    start = i + 1;
  }
  std::string_view rest = Trim(text.substr(std::min(start, text.size())));
  if (!rest.empty()) sentences.emplace_back(rest);
  return sentences;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsAlnum(text[i])) {
      ++i;
      continue;
    }
    size_t begin = i;
    while (i < text.size() && IsAlnum(text[i])) ++i;
    tokens.push_back({std::string(text.substr(begin, i - begin)), begin, i});
  }
  return tokens;
}

bool IsCapitalized(std::string_view word) {
  return !word.empty() && IsUpper(word.front());
}

bool IsQuestionStarter(std::string_view lowercase_word) {
  return std::binary_search(kQuestionStarters.begin(), kQuestionStarters.end(),
                            lowercase_word);
}

std::vector<std::pair<int, int>> CapitalizedRuns(
    const std::vector<Token> &tokens) {
  std::vector<std::pair<int, int>> runs;
  int n = static_cast<int>(tokens.size());
  int i = 0;
  if (n > 0 && IsQuestionStarter(ToLower(tokens[0].text))) i = 1;
  while (i < n) {
    if (!IsCapitalized(tokens[i].text)) {
      ++i;
      continue;
    }
    int begin = i;
    while (i < n &&
           (IsCapitalized(tokens[i].text) ||
            std::isdigit(static_cast<unsigned char>(tokens[i].text[0])))) {
      ++i;
    }
    runs.emplace_back(begin, i);
  }
  return runs;
}

}  // namespace kgqa
