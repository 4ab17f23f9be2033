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

#include <optional>
#include <string>
#include <vector>

#include "fedkit/net/envelope.hpp"

namespace fedkit::net {

// One record per sent envelope. Timestamps are logical (send order) in
// simulation so transcripts are reproducible byte for byte.
struct AuditRecord {
  uint64_t timestamp = 0;
  uint8_t protocol_version = kProtocolVersion;
  std::string job_id;
  uint32_t round = 0;
  PartyId sender;
  PartyId recipient;
  MsgType msg_type = MsgType::kControl;
  Digest32 payload_digest{};
  uint64_t payload_size = 0;
  Bytes payload;  // retained for leakage assertions
};

// Append-only log of every envelope that crossed a channel.
class AuditLog {
 public:
  void append(const Envelope& env, uint64_t timestamp);
  void append(AuditRecord rec);

  const std::vector<AuditRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }

  // Line-delimited persistence; payload bytes stored hex-encoded so stored
  // logs stay auditable.
  std::string to_text() const;
  void write_file(const std::string& path) const;
  static AuditLog from_text(const std::string& text);
  static AuditLog read_file(const std::string& path);

 private:
  std::vector<AuditRecord> records_;
};

struct LeakFinding {
  size_t record_index;
  size_t pattern_index;
};

// Scans every payload for the forbidden byte patterns; empty result = pass.
std::optional<LeakFinding> audit_find_leak(const AuditLog& log,
                                           std::span<const Bytes> forbidden);

std::string describe_record(const AuditRecord& rec);

}  // namespace fedkit::net
