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

#ifndef KGQA_TEXT_H_
#define KGQA_TEXT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgqa {

std::string ToLower(std::string_view s);

// Lowercase alphanumeric runs of the text. Everything else separates words.
std::vector<std::string> Words(std::string_view text);

// Words joined by single spaces. Used as the canonical form of labels and
// phrases for both indexing and edit distance.
std::string NormalizeText(std::string_view text);

// Splits an identifier such as "dateOfBirth", "populationTotal" or
// "Rashid_Behbudov_State_Song_Theatre" into lowercase words.
std::vector<std::string> SplitIdentifier(std::string_view identifier);

// The part of an IRI after the last '/' or '#', percent-decoded.
std::string LocalName(std::string_view iri);

// Default label of an IRI: its local name split into lowercase words.
std::string LabelFromIri(std::string_view iri);

// Function words ignored when relating question words to relation words.
bool IsStopWord(std::string_view lowercase_word);

// Lowercase words of the question with stop words removed.
std::vector<std::string> ContentWords(std::string_view text);

// Splits text into sentences at '.', '?' or '!' followed by whitespace.
// Empty sentences are dropped.
std::vector<std::string> SplitSentences(std::string_view text);

std::string_view Trim(std::string_view s);

// A word of the original text with its byte offsets.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
};

// Alphanumeric runs with their original case.
std::vector<Token> Tokenize(std::string_view text);

bool IsCapitalized(std::string_view word);

// Words that open a question without naming anything, e.g. wh-words,
// auxiliaries and imperatives such as "give" or "name".
bool IsQuestionStarter(std::string_view lowercase_word);

// Maximal runs [begin, end) of capitalized tokens. Digit tokens may extend
// a run but not start one. A question starter in first position is
// skipped.
std::vector<std::pair<int, int>> CapitalizedRuns(
    const std::vector<Token> &tokens);

}  // namespace kgqa

#endif  // KGQA_TEXT_H_
