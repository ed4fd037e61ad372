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

#ifndef KGQA_DATASET_H_
#define KGQA_DATASET_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/kg_store.h"
#include "kgqa/query_graph.h"
#include "kgqa/sqp_catalog.h"

namespace kgqa {

struct DatasetEntry {
  std::string id;
  std::string question;
  std::optional<QueryGraph> gold_query;
  // Entity IRIs, literal forms or counts, without angle brackets.
  std::vector<std::string> gold_answers;
  std::optional<int> gold_pattern;
  std::optional<std::string> gold_entity;
};

struct Dataset {
  std::vector<DatasetEntry> entries;
  // Ids of entries dropped because their gold query fits no catalog
  // pattern, with the reason.
  std::vector<std::string> warnings;
  size_t excluded = 0;
};

// JSON array of records {id, question, query, answers} with optional
// `pattern` and `entity`. `query` is a list of `S|P|O` edges (or one string
// with one edge per line). The gold pattern is derived from the query when
// present; the gold entity defaults to the first entity constant on a leaf
// of the pattern. Throws LoadError naming the entry on malformed records.
Dataset LoadDataset(const std::string &path, const PatternCatalog &catalog,
                    std::string_view type_predicate = kRdfType);
Dataset ParseDataset(std::string_view json_text, const std::string &source,
                     const PatternCatalog &catalog,
                     std::string_view type_predicate = kRdfType);

// Strips surrounding whitespace and angle brackets.
std::string NormalizeAnswer(std::string_view answer);

}  // namespace kgqa

#endif  // KGQA_DATASET_H_
