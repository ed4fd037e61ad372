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

#ifndef KGQA_CONSTRAINTS_H_
#define KGQA_CONSTRAINTS_H_

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/kg_store.h"
#include "kgqa/query_graph.h"

namespace kgqa {

// Trigger words for the four constraint kinds.
class ConstraintLexicon {
 public:
  enum class Kind { kAnswerType, kOrdinal, kAggregation, kComparative };

  struct Entry {
    Kind kind = Kind::kAggregation;
    SortOrder order = SortOrder::kDescending;
    int limit = 1;
    CompareOp op = CompareOp::kGreater;
    // Class IRI for answer-type entries.
    std::string type_iri;
  };

  // Built-in superlatives, comparatives and counting phrases. No nouns.
  static ConstraintLexicon Default();

  // Adds every class of the graph under its labels, so that "which
  // mountain" maps to the Mountain class.
  void AddClassLabels(const KnowledgeGraph &graph);

  // Lines `keyword\tkind\tparams` with kind one of answer-type (params: class
  // IRI), ordinal (params: asc|desc[,limit]), aggregation, comparative
  // (params: < > <= >=). Later entries override earlier ones.
  void Load(const std::string &path);
  void Parse(std::istream &in, const std::string &source);

  void Add(std::string_view keyword, Entry entry);

  // Entries keyed by normalized keyword.
  const std::map<std::string, Entry> &keywords() const { return keywords_; }
  const std::map<std::string, std::string> &nouns() const { return nouns_; }

  // Class IRI of a noun, trying simple plural forms. Empty when unknown.
  std::string ClassOf(std::string_view noun) const;

 private:
  std::map<std::string, Entry> keywords_;
  std::map<std::string, std::string> nouns_;
};

// Keyword rules over the question. The result is ordered by position in
// the question and holds at most one aggregation and one answer type.
std::vector<Constraint> DetectConstraints(std::string_view question,
                                          const ConstraintLexicon &lexicon);

// Attaches constraints to a fully labeled query graph. Ordinal and
// comparative constraints target the variable bound to a number or date;
// when that is the return variable, the answer moves to its neighbouring
// variable. Throws ConstraintError when no such variable exists.
QueryGraph Augment(const QueryGraph &query,
                   const std::vector<Constraint> &constraints,
                   const KnowledgeGraph &graph);

}  // namespace kgqa

#endif  // KGQA_CONSTRAINTS_H_
