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

#ifndef KGQA_RELATION_RELEVANCE_H_
#define KGQA_RELATION_RELEVANCE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgqa/embeddings.h"

namespace kgqa {

// Lowercase question words without stop words.
std::vector<std::string> QuestionWords(std::string_view question);

// Words of a predicate's local name, e.g. dateOfBirth -> date, of, birth.
std::vector<std::string> RelationWords(std::string_view predicate_iri);

// Sum over all (question word, relation word) pairs of
// lambda * cos(q, r) + (1 - lambda) / (lev(q, r) + 1).
double RelationRelevance(std::span<const std::string> question_words,
                         std::span<const std::string> relation_words,
                         const WordVectorStore &vectors, double lambda);

double RelationRelevance(std::string_view question,
                         std::string_view predicate_iri,
                         const WordVectorStore &vectors, double lambda);

}  // namespace kgqa

#endif  // KGQA_RELATION_RELEVANCE_H_
