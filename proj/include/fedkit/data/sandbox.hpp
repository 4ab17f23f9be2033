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

#include <span>
#include <string>

#include "fedkit/data/dataset.hpp"

namespace fedkit::data {

// The per-party data sandbox: the only component that touches raw data.
// Ingestion, normalization/standardization, and de-identification happen
// here, before anything reaches a protocol. This module never sends or
// receives envelopes.

// Loads a CSV (first row header, UTF-8, '.' decimal separator) under the
// schema. Rows with unparseable cells are dropped and their 1-based data row
// numbers recorded in rejected_rows. Missing declared columns raise
// SchemaError; duplicate entity ids raise IntegrityError.
PartyDataset ingest_csv(const std::string& path, const Schema& schema,
                        const std::string& party_id);
PartyDataset ingest_csv_text(const std::string& text, const Schema& schema,
                             const std::string& party_id);

// Applies each column's normalization and desensitization policy. Zscore
// columns end with sample mean 0 / variance 1, minmax columns in [0, 1],
// bucketized columns take at most k values, dropped columns disappear.
// Zero-variance columns under zscore/minmax raise DomainError.
PartyDataset standardize(const PartyDataset& ds);

// Replaces entity ids with keyed-hash digests (hex). The digest->raw map is
// retained locally for result re-linking. All parties of one job must share
// the hashing key so equal raw ids map to equal digests; raw-id secrecy
// against other parties rests on the PSI blinding, not on this hash.
PartyDataset deidentify(const PartyDataset& ds, std::span<const uint8_t> id_hash_key);

}  // namespace fedkit::data
