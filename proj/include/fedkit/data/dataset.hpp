// Copyright 2026 The fedkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fedkit::data {

enum class ColumnKind { kId, kNumeric, kLabel };
enum class Normalization { kZscore, kMinmax, kNone };

struct Desensitization {
  enum class Kind { kKeep, kDrop, kBucketize };
  Kind kind = Kind::kKeep;
  int buckets = 0;  // for kBucketize
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
  std::string unit;
  Normalization norm = Normalization::kNone;
  Desensitization desens;
  // Declared value bounds; required for encrypted statistics so fixed-point
  // overflow is detectable before encryption.
  std::optional<std::pair<double, double>> bounds;
};

// Ordered column descriptors. Exactly one id column; at most one label.
struct Schema {
  std::vector<ColumnSpec> columns;

  static Schema load(const std::string& path);
  static Schema parse(const std::string& text);

  const ColumnSpec& id_column() const;
  const ColumnSpec* label_column() const;
  std::vector<std::string> feature_names() const;
  const ColumnSpec& column(const std::string& name) const;
  void validate() const;
};

// Entity-keyed records held inside one party's sandbox. Column-major
// feature storage; immutable by convention (transforms return new datasets).
// Never serialized into an envelope in raw form.
struct PartyDataset {
  std::string party_id;
  Schema schema;
  std::vector<std::string> entity_ids;
  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;  // [column][row]
  std::optional<std::vector<double>> labels;  // 0/1 when present
  // After de-identification: digest -> original id, for result re-linking.
  std::map<std::string, std::string> id_map;
  std::vector<size_t> rejected_rows;  // 1-based data row numbers dropped at ingest

  size_t rows() const { return entity_ids.size(); }
  size_t feature_count() const { return feature_names.size(); }
  const std::vector<double>& column(const std::string& name) const;
  size_t feature_index(const std::string& name) const;
};

}  // namespace fedkit::data
