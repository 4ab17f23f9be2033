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

#include "fedkit/data/sandbox.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fedkit/common/error.hpp"
#include "fedkit/common/hash.hpp"

namespace fedkit::data {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::optional<double> parse_cell(const std::string& raw) {
  std::string s = strip(raw);
  if (s.empty()) return std::nullopt;
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

double sample_mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0;
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

PartyDataset ingest_csv_text(const std::string& text, const Schema& schema,
                             const std::string& party_id) {
  schema.validate();
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("csv: empty file");
  std::vector<std::string> header = split_csv_line(strip(line));
  for (auto& h : header) h = strip(h);

  // Map each schema column to its csv position.
  std::vector<size_t> positions;
  for (const auto& spec : schema.columns) {
    auto it = std::find(header.begin(), header.end(), spec.name);
    if (it == header.end()) {
      throw SchemaError("csv: missing declared column '" + spec.name + "'");
    }
    positions.push_back(static_cast<size_t>(it - header.begin()));
  }

  PartyDataset ds;
  ds.party_id = party_id;
  ds.schema = schema;
  ds.feature_names = schema.feature_names();
  ds.features.resize(ds.feature_names.size());
  if (schema.label_column() != nullptr) ds.labels.emplace();

  size_t row_number = 0;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++row_number;
    std::string stripped = strip(line);
    if (stripped.empty()) continue;
    std::vector<std::string> cells = split_csv_line(stripped);
    if (cells.size() != header.size()) {
      ds.rejected_rows.push_back(row_number);
      continue;
    }

    std::string id;
    std::vector<double> nums;
    std::optional<double> label;
    bool bad = false;
    size_t feature_i = 0;
    for (size_t ci = 0; ci < schema.columns.size(); ++ci) {
      const ColumnSpec& spec = schema.columns[ci];
      const std::string& cell = cells[positions[ci]];
      if (spec.kind == ColumnKind::kId) {
        id = strip(cell);
        if (id.empty()) bad = true;
      } else {
        std::optional<double> v = parse_cell(cell);
        if (!v.has_value()) {
          bad = true;
        } else if (spec.kind == ColumnKind::kLabel) {
          if (*v != 0.0 && *v != 1.0) bad = true;
          label = v;
        } else {
          nums.push_back(*v);
          ++feature_i;
        }
      }
      if (bad) break;
    }
    if (bad || feature_i != ds.feature_names.size() ||
        (ds.labels.has_value() && !label.has_value())) {
      ds.rejected_rows.push_back(row_number);
      continue;
    }
    if (!seen_ids.insert(id).second) {
      throw IntegrityError("csv: duplicate entity id '" + id + "' at data row " +
                           std::to_string(row_number));
    }
    ds.entity_ids.push_back(id);
    for (size_t f = 0; f < nums.size(); ++f) ds.features[f].push_back(nums[f]);
    if (ds.labels.has_value()) ds.labels->push_back(*label);
  }
  return ds;
}

PartyDataset ingest_csv(const std::string& path, const Schema& schema,
                        const std::string& party_id) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SchemaError("csv: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ingest_csv_text(ss.str(), schema, party_id);
}

PartyDataset standardize(const PartyDataset& ds) {
  PartyDataset out = ds;
  out.features.clear();
  out.feature_names.clear();
  std::vector<ColumnSpec> kept_columns;

  for (const auto& spec : ds.schema.columns) {
    if (spec.kind != ColumnKind::kNumeric) {
      kept_columns.push_back(spec);
      continue;
    }
    if (spec.desens.kind == Desensitization::Kind::kDrop) continue;
    std::vector<double> col = ds.column(spec.name);

    switch (spec.norm) {
      case Normalization::kZscore: {
        double mean = sample_mean(col);
        double var = sample_variance(col, mean);
        if (var < 1e-24) {
          throw DomainError("standardize: column '" + spec.name +
                            "' has zero variance under zscore");
        }
        double sd = std::sqrt(var);
        for (double& x : col) x = (x - mean) / sd;
        break;
      }
      case Normalization::kMinmax: {
        auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        if (*hi - *lo < 1e-24) {
          throw DomainError("standardize: column '" + spec.name +
                            "' has zero range under minmax");
        }
        double span = *hi - *lo;
        double base = *lo;
        for (double& x : col) x = (x - base) / span;
        break;
      }
      case Normalization::kNone:
        break;
    }

    if (spec.desens.kind == Desensitization::Kind::kBucketize) {
      int k = spec.desens.buckets;
      std::vector<double> sorted = col;
      std::sort(sorted.begin(), sorted.end());
      std::vector<double> edges;  // upper edge of buckets 0..k-2 (quantiles)
      for (int b = 1; b < k; ++b) {
        size_t idx = std::min(sorted.size() - 1, b * sorted.size() / static_cast<size_t>(k));
        edges.push_back(sorted[idx]);
      }
      for (double& x : col) {
        int bucket = static_cast<int>(
            std::upper_bound(edges.begin(), edges.end(), x) - edges.begin());
        x = static_cast<double>(bucket);
      }
    }

    out.feature_names.push_back(spec.name);
    out.features.push_back(std::move(col));
    kept_columns.push_back(spec);
  }
  out.schema.columns = std::move(kept_columns);
  return out;
}

PartyDataset deidentify(const PartyDataset& ds, std::span<const uint8_t> id_hash_key) {
  PartyDataset out = ds;
  out.id_map.clear();
  for (auto& id : out.entity_ids) {
    Digest32 d = keyed_digest(id_hash_key, as_bytes(id));
    std::string digest = to_hex(std::span<const uint8_t>(d.data(), 16));
    out.id_map[digest] = id;
    id = digest;
  }
  if (out.id_map.size() != out.entity_ids.size()) {
    throw IntegrityError("deidentify: digest collision detected");
  }
  return out;
}

}  // namespace fedkit::data
