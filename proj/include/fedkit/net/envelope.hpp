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

#include <cstdint>
#include <string>
#include <vector>

#include "fedkit/common/hash.hpp"

namespace fedkit::net {

using PartyId = std::string;

inline constexpr uint8_t kProtocolVersion = 1;
inline constexpr size_t kMaxFrameBytes = 16ull << 20;  // 16 MiB

enum class MsgType : uint8_t {
  kJoin = 0,
  kAlignBlind,
  kAlignReply,
  kEncStat,
  kModelUpdate,
  kGlobalUpdate,
  kPartialLogit,
  kGradientCandidates,
  kGradientSelected,
  kEmbedding,
  kHeadGradient,
  kKnowledgeQuery,
  kKnowledgeReply,
  kControl,
  kError,
};

const char* msg_type_name(MsgType t);
MsgType msg_type_from_name(const std::string& name);  // throws DecodeError

// Security domains: PRIVATE holds raw data and never crosses the wire;
// EXCHANGE carries protected model/statistic material between parties;
// FEDERATED is coordination traffic through the arbitrator. Enforcement is
// by audit assertion over payload bytes, not by construction.
enum class SecurityDomain : uint8_t { kPrivate = 0, kExchange, kFederated };

SecurityDomain domain_of(MsgType t);

// The framed unit every inter-party byte travels in.
struct Envelope {
  uint8_t protocol_version = kProtocolVersion;
  std::string job_id;
  uint32_t round = 0;
  PartyId sender;
  PartyId recipient;
  MsgType msg_type = MsgType::kControl;
  Bytes payload;
  Digest32 payload_digest{};  // always sha256(payload)
};

Envelope make_envelope(std::string job_id, uint32_t round, PartyId sender, PartyId recipient,
                       MsgType type, Bytes payload);

// Wire image (without the outer 4-byte frame length). Version byte first.
Bytes serialize_envelope(const Envelope& env);
// Parses and verifies the payload digest; throws DecodeError.
Envelope deserialize_envelope(std::span<const uint8_t> data);

}  // namespace fedkit::net
