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

#include "kgqa/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace kgqa {
namespace {

std::set<std::string> AnswerSetOf(const std::vector<std::string> &answers) {
  std::set<std::string> out;
  for (const std::string &a : answers) out.insert(NormalizeAnswer(a));
  return out;
}

std::string Format(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

std::string Flag(const std::optional<bool> &value) {
  if (!value) return "-";
  return *value ? "yes" : "no";
}

std::string Join(const std::vector<std::string> &items, const char *sep) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

QuestionScore ScoreAnswers(const std::vector<std::string> &returned,
                           const std::vector<std::string> &gold) {
  std::set<std::string> r = AnswerSetOf(returned);
  std::set<std::string> g = AnswerSetOf(gold);
  if (r.empty() && g.empty()) return {1, 1, 1};
  size_t common = 0;
  for (const std::string &a : r) common += g.count(a);
  QuestionScore s;
  s.precision = r.empty() ? 0 : static_cast<double>(common) / r.size();
  s.recall = g.empty() ? 0 : static_cast<double>(common) / g.size();
  s.f1 = s.precision + s.recall > 0
             ? 2 * s.precision * s.recall / (s.precision + s.recall)
             : 0;
  return s;
}

QuestionScore MacroAverage(std::span<const EvalRow> rows) {
  QuestionScore macro;
  if (rows.empty()) return macro;
  for (const EvalRow &row : rows) {
    macro.precision += row.score.precision;
    macro.recall += row.score.recall;
    macro.f1 += row.score.f1;
  }
  double n = static_cast<double>(rows.size());
  macro.precision /= n;
  macro.recall /= n;
  macro.f1 /= n;
  return macro;
}

EvalReport Evaluate(const QuestionAnswerer &answerer,
                    std::span<const DatasetEntry> entries, Mode mode) {
  EvalReport report;
  for (const DatasetEntry &entry : entries) {
    GoldHints hints{entry.gold_pattern, entry.gold_entity};
    AnswerResult result = answerer.Answer(entry.question, mode, hints);
    EvalRow row;
    row.id = entry.id;
    row.score = ScoreAnswers(result.answers, entry.gold_answers);
    row.answers = result.answers;
    row.used_pattern = result.used_pattern;
    if (entry.gold_pattern && result.used_pattern >= 0) {
      row.pattern_correct = result.used_pattern == *entry.gold_pattern;
    }
    if (entry.gold_entity && result.entity) {
      row.entity_correct = *result.entity == *entry.gold_entity;
    }
    row.no_entity = result.no_entity;
    row.extension_failed = result.extension_failed;
    row.diagnostics = Join(result.diagnostics, "; ");
    report.rows.push_back(std::move(row));
  }
  report.macro = MacroAverage(report.rows);
  return report;
}

std::string EvalReport::ToTsv() const {
  std::ostringstream out;
  out << "id\tprecision\trecall\tf1\tpattern\tpattern_ok\tentity_ok\t"
         "no_entity\textension_failed\tanswers\tdiagnostics\n";
  for (const EvalRow &row : rows) {
    out << row.id << '\t' << Format(row.score.precision) << '\t'
        << Format(row.score.recall) << '\t' << Format(row.score.f1) << '\t'
        << row.used_pattern << '\t' << Flag(row.pattern_correct) << '\t'
        << Flag(row.entity_correct) << '\t' << (row.no_entity ? "yes" : "no")
        << '\t' << (row.extension_failed ? "yes" : "no") << '\t'
        << Join(row.answers, " ") << '\t' << row.diagnostics << '\n';
  }
  out << "macro\t" << Format(macro.precision) << '\t' << Format(macro.recall)
      << '\t' << Format(macro.f1) << '\n';
  return out.str();
}

}  // namespace kgqa
