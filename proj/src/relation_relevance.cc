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

#include "kgqa/relation_relevance.h"

#include "kgqa/errors.h"
#include "kgqa/levenshtein.h"
#include "kgqa/text.h"

namespace kgqa {

std::vector<std::string> QuestionWords(std::string_view question) {
  return ContentWords(question);
}

std::vector<std::string> RelationWords(std::string_view predicate_iri) {
  return SplitIdentifier(LocalName(predicate_iri));
}

double RelationRelevance(std::span<const std::string> question_words,
                         std::span<const std::string> relation_words,
                         const WordVectorStore &vectors, double lambda) {
  if (!(lambda >= 0 && lambda <= 1)) {
    throw ContractViolation("lambda must lie in [0, 1]");
  }
  double sum = 0;
  for (const std::string &q : question_words) {
    for (const std::string &r : relation_words) {
      double cosine = lambda > 0 ? vectors.Cosine(q, r) : 0.0;
      sum += lambda * cosine +
             (1 - lambda) / static_cast<double>(Levenshtein(q, r) + 1);
    }
  }
  return sum;
}

double RelationRelevance(std::string_view question,
                         std::string_view predicate_iri,
                         const WordVectorStore &vectors, double lambda) {
  return RelationRelevance(QuestionWords(question),
                           RelationWords(predicate_iri), vectors, lambda);
}

}  // namespace kgqa
