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

#ifndef KGQA_EVALUATION_H_
#define KGQA_EVALUATION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgqa/dataset.h"
#include "kgqa/pipeline.h"

namespace kgqa {

struct QuestionScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Set-based precision and recall over normalized answers. Both sets empty
// scores 1/1; an empty answer to a non-empty gold set scores 0/0.
QuestionScore ScoreAnswers(const std::vector<std::string> &returned,
                           const std::vector<std::string> &gold);

struct EvalRow {
  std::string id;
  QuestionScore score;
  std::vector<std::string> answers;
  int used_pattern = -1;
  std::optional<bool> pattern_correct;
  std::optional<bool> entity_correct;
  bool no_entity = false;
  bool extension_failed = false;
  std::string diagnostics;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  QuestionScore macro;

  // Header, one row per question, then a `macro` summary line.
  std::string ToTsv() const;
};

// Arithmetic means of the per-row scores; zeros for no rows.
QuestionScore MacroAverage(std::span<const EvalRow> rows);

EvalReport Evaluate(const QuestionAnswerer &answerer,
                    std::span<const DatasetEntry> entries, Mode mode);

}  // namespace kgqa

#endif  // KGQA_EVALUATION_H_
