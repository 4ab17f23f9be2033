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

#include "fedkit/net/envelope.hpp"

#include <algorithm>
#include <array>

#include "fedkit/common/error.hpp"
#include "fedkit/common/wire.hpp"

namespace fedkit::net {

namespace {
constexpr std::array<const char*, 15> kMsgTypeNames = {
    "JOIN",           "ALIGN_BLIND",     "ALIGN_REPLY",       "ENC_STAT",
    "MODEL_UPDATE",   "GLOBAL_UPDATE",   "PARTIAL_LOGIT",     "GRADIENT_CANDIDATES",
    "GRADIENT_SELECTED", "EMBEDDING",    "HEAD_GRADIENT",     "KNOWLEDGE_QUERY",
    "KNOWLEDGE_REPLY", "CONTROL",        "ERROR",
};
}  // namespace

const char* msg_type_name(MsgType t) {
  auto i = static_cast<size_t>(t);
  if (i >= kMsgTypeNames.size()) return "UNKNOWN";
  return kMsgTypeNames[i];
}

MsgType msg_type_from_name(const std::string& name) {
  for (size_t i = 0; i < kMsgTypeNames.size(); ++i) {
    if (name == kMsgTypeNames[i]) return static_cast<MsgType>(i);
  }
  throw DecodeError("unknown message type: " + name);
}

SecurityDomain domain_of(MsgType t) {
  switch (t) {
    case MsgType::kJoin:
    case MsgType::kGlobalUpdate:
    case MsgType::kControl:
    case MsgType::kError:
      return SecurityDomain::kFederated;
    default:
      return SecurityDomain::kExchange;
  }
}

Envelope make_envelope(std::string job_id, uint32_t round, PartyId sender, PartyId recipient,
                       MsgType type, Bytes payload) {
  Envelope env;
  env.job_id = std::move(job_id);
  env.round = round;
  env.sender = std::move(sender);
  env.recipient = std::move(recipient);
  env.msg_type = type;
  env.payload_digest = sha256(payload);
  env.payload = std::move(payload);
  return env;
}

Bytes serialize_envelope(const Envelope& env) {
  wire::Writer w;
  w.u8(env.protocol_version);
  w.u8(static_cast<uint8_t>(env.msg_type));
  w.u32(env.round);
  w.str(env.job_id);
  w.str(env.sender);
  w.str(env.recipient);
  w.raw(env.payload_digest);
  w.blob(env.payload);
  return w.take();
}

Envelope deserialize_envelope(std::span<const uint8_t> data) {
  if (data.size() > kMaxFrameBytes) throw DecodeError("envelope exceeds max frame size");
  wire::Reader r(data);
  Envelope env;
  env.protocol_version = r.u8();
  if (env.protocol_version != kProtocolVersion) {
    throw DecodeError("unsupported protocol version " + std::to_string(env.protocol_version));
  }
  uint8_t type = r.u8();
  if (type >= kMsgTypeNames.size()) throw DecodeError("unknown message type byte");
  env.msg_type = static_cast<MsgType>(type);
  env.round = r.u32();
  env.job_id = r.str();
  env.sender = r.str();
  env.recipient = r.str();
  auto digest = r.raw(32);
  std::copy(digest.begin(), digest.end(), env.payload_digest.begin());
  env.payload = r.blob();
  r.expect_end();
  if (sha256(env.payload) != env.payload_digest) {
    throw DecodeError("envelope payload digest mismatch");
  }
  return env;
}

}  // namespace fedkit::net
