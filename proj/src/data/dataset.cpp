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

#include "fedkit/data/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fedkit/common/error.hpp"
#include "fedkit/common/ini.hpp"

namespace fedkit::data {

namespace {

ColumnKind parse_kind(const std::string& v, const std::string& col) {
  if (v == "id") return ColumnKind::kId;
  if (v == "numeric") return ColumnKind::kNumeric;
  if (v == "label") return ColumnKind::kLabel;
  throw ConfigError("column " + col + ": unknown kind '" + v + "'");
}

Normalization parse_norm(const std::string& v, const std::string& col) {
  if (v == "zscore") return Normalization::kZscore;
  if (v == "minmax") return Normalization::kMinmax;
  if (v == "none") return Normalization::kNone;
  throw ConfigError("column " + col + ": unknown normalization '" + v + "'");
}

Desensitization parse_desens(const std::string& v, const std::string& col) {
  Desensitization d;
  if (v == "keep") {
    d.kind = Desensitization::Kind::kKeep;
  } else if (v == "drop") {
    d.kind = Desensitization::Kind::kDrop;
  } else if (v.rfind("bucketize(", 0) == 0 && v.back() == ')') {
    d.kind = Desensitization::Kind::kBucketize;
    try {
      d.buckets = std::stoi(v.substr(10, v.size() - 11));
    } catch (const std::exception&) {
      throw ConfigError("column " + col + ": bad bucketize count in '" + v + "'");
    }
    if (d.buckets < 2) throw ConfigError("column " + col + ": bucketize needs k >= 2");
  } else {
    throw ConfigError("column " + col + ": unknown desensitization '" + v + "'");
  }
  return d;
}

}  // namespace

Schema Schema::parse(const std::string& text) {
  IniFile ini = IniFile::parse(text);
  Schema schema;
  for (const auto* sec : ini.with_prefix("column.")) {
    ColumnSpec spec;
    spec.name = sec->name.substr(7);
    if (spec.name.empty()) throw ConfigError("schema: empty column name");
    spec.kind = parse_kind(sec->get("kind"), spec.name);
    spec.unit = sec->get_or("unit", "");
    spec.norm = parse_norm(sec->get_or("norm", "none"), spec.name);
    spec.desens = parse_desens(sec->get_or("desens", "keep"), spec.name);
    if (sec->has("bounds")) {
      std::string b = sec->get("bounds");
      auto comma = b.find(',');
      if (comma == std::string::npos) {
        throw ConfigError("column " + spec.name + ": bounds must be 'lo,hi'");
      }
      try {
        double lo = std::stod(b.substr(0, comma));
        double hi = std::stod(b.substr(comma + 1));
        if (lo >= hi) throw std::invalid_argument(b);
        spec.bounds = {lo, hi};
      } catch (const std::exception&) {
        throw ConfigError("column " + spec.name + ": bad bounds '" + b + "'");
      }
    }
    schema.columns.push_back(std::move(spec));
  }
  schema.validate();
  return schema;
}

Schema Schema::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open schema file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void Schema::validate() const {
  size_t ids = 0, labels = 0;
  for (const auto& c : columns) {
    if (c.kind == ColumnKind::kId) ++ids;
    if (c.kind == ColumnKind::kLabel) ++labels;
    if (c.kind != ColumnKind::kNumeric && c.norm != Normalization::kNone) {
      throw ConfigError("column " + c.name + ": normalization applies to numeric columns only");
    }
  }
  if (ids != 1) throw ConfigError("schema needs exactly one id column");
  if (labels > 1) throw ConfigError("schema allows at most one label column");
}

const ColumnSpec& Schema::id_column() const {
  for (const auto& c : columns) {
    if (c.kind == ColumnKind::kId) return c;
  }
  throw ConfigError("schema has no id column");
}

const ColumnSpec* Schema::label_column() const {
  for (const auto& c : columns) {
    if (c.kind == ColumnKind::kLabel) return &c;
  }
  return nullptr;
}

std::vector<std::string> Schema::feature_names() const {
  std::vector<std::string> out;
  for (const auto& c : columns) {
    if (c.kind == ColumnKind::kNumeric) out.push_back(c.name);
  }
  return out;
}

const ColumnSpec& Schema::column(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw SchemaError("schema has no column '" + name + "'");
}

const std::vector<double>& PartyDataset::column(const std::string& name) const {
  return features[feature_index(name)];
}

size_t PartyDataset::feature_index(const std::string& name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) {
    throw SchemaError("dataset " + party_id + " has no feature '" + name + "'");
  }
  return static_cast<size_t>(it - feature_names.begin());
}

}  // namespace fedkit::data
