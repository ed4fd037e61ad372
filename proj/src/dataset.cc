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

#include "kgqa/dataset.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "kgqa/errors.h"
#include "kgqa/text.h"

namespace kgqa {
namespace {

using nlohmann::json;

std::string Scalar(const json &value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number()) {
    std::ostringstream out;
    out << value.get<double>();
    return out.str();
  }
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  throw LoadError("expected a string or number, got " + value.dump());
}

std::vector<std::string> EdgeStrings(const json &query) {
  std::vector<std::string> edges;
  if (query.is_array()) {
    for (const json &edge : query) edges.push_back(edge.get<std::string>());
  } else if (query.is_string()) {
    std::istringstream lines(query.get<std::string>());
    std::string line;
    while (std::getline(lines, line)) {
      if (!Trim(line).empty()) edges.emplace_back(Trim(line));
    }
  } else {
    throw LoadError("query must be a list of edges or a string");
  }
  return edges;
}

// First entity constant at a leaf of the kept skeleton.
std::optional<std::string> LeafEntity(const QueryGraph &q,
                                      const PatternSkeleton &skeleton) {
  for (int p : skeleton.positions) {
    if (q.nodes[p].kind != TermKind::kEntity) continue;
    int degree = 0;
    for (int e : skeleton.edges) {
      if (q.edges[e].from == p) ++degree;
      if (q.edges[e].to == p) ++degree;
    }
    if (degree <= 1) return q.nodes[p].value;
  }
  return std::nullopt;
}

}  // namespace

std::string NormalizeAnswer(std::string_view answer) {
  std::string_view a = Trim(answer);
  if (a.size() >= 2 && a.front() == '<' && a.back() == '>') {
    a = a.substr(1, a.size() - 2);
  }
  return std::string(a);
}

Dataset LoadDataset(const std::string &path, const PatternCatalog &catalog,
                    std::string_view type_predicate) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseDataset(buffer.str(), path, catalog, type_predicate);
}

Dataset ParseDataset(std::string_view json_text, const std::string &source,
                     const PatternCatalog &catalog,
                     std::string_view type_predicate) {
  json data;
  try {
    data = json::parse(json_text);
  } catch (const json::exception &e) {
    throw LoadError(source + ": " + e.what());
  }
  if (!data.is_array()) throw LoadError(source + ": expected a JSON array");

  Dataset dataset;
  for (size_t i = 0; i < data.size(); ++i) {
    const json &record = data[i];
    std::string id = "#" + std::to_string(i);
    try {
      if (!record.is_object()) throw LoadError("entry is not an object");
      if (record.contains("id")) id = Scalar(record.at("id"));
      DatasetEntry entry;
      entry.id = id;
      entry.question =
          std::string(Trim(record.at("question").get<std::string>()));
      if (entry.question.empty()) throw LoadError("empty question");
      if (record.contains("answers")) {
        for (const json &a : record.at("answers")) {
          entry.gold_answers.push_back(NormalizeAnswer(Scalar(a)));
        }
      }
      if (record.contains("pattern")) {
        entry.gold_pattern = record.at("pattern").get<int>();
      }
      if (record.contains("entity")) {
        entry.gold_entity =
            NormalizeAnswer(record.at("entity").get<std::string>());
      }
      if (record.contains("query") && !record.at("query").is_null()) {
        QueryGraph q = ParseEdgeList(EdgeStrings(record.at("query")));
        try {
          entry.gold_pattern = DerivePattern(catalog, q, type_predicate);
        } catch (const NoPatternError &e) {
          dataset.warnings.push_back(id + ": excluded: " + e.what());
          ++dataset.excluded;
          continue;
        }
        if (!entry.gold_entity) {
          entry.gold_entity = LeafEntity(q, StripTypeEdges(q, type_predicate));
        }
        entry.gold_query = std::move(q);
      }
      dataset.entries.push_back(std::move(entry));
    } catch (const json::exception &e) {
      throw LoadError(source + ": entry " + id + ": " + e.what());
    } catch (const LoadError &e) {
      throw LoadError(source + ": entry " + id + ": " + e.what());
    }
  }
  return dataset;
}

}  // namespace kgqa
