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

#include "fedkit/net/audit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fedkit/common/error.hpp"

namespace fedkit::net {

void AuditLog::append(const Envelope& env, uint64_t timestamp) {
  AuditRecord rec;
  rec.timestamp = timestamp;
  rec.protocol_version = env.protocol_version;
  rec.job_id = env.job_id;
  rec.round = env.round;
  rec.sender = env.sender;
  rec.recipient = env.recipient;
  rec.msg_type = env.msg_type;
  rec.payload_digest = env.payload_digest;
  rec.payload_size = env.payload.size();
  rec.payload = env.payload;
  records_.push_back(std::move(rec));
}

void AuditLog::append(AuditRecord rec) { records_.push_back(std::move(rec)); }

std::string AuditLog::to_text() const {
  std::ostringstream out;
  for (const auto& r : records_) {
    out << "ts=" << r.timestamp << " v=" << int(r.protocol_version) << " job=" << r.job_id
        << " round=" << r.round << " from=" << r.sender << " to=" << r.recipient
        << " type=" << msg_type_name(r.msg_type) << " len=" << r.payload_size
        << " digest=" << to_hex(r.payload_digest) << " payload=" << to_hex(r.payload) << "\n";
  }
  return out.str();
}

void AuditLog::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("audit: cannot open " + path + " for writing");
  f << to_text();
}

AuditLog AuditLog::from_text(const std::string& text) {
  AuditLog log;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    AuditRecord rec;
    std::istringstream ls(line);
    std::string field;
    while (ls >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) {
        throw DecodeError("audit line " + std::to_string(lineno) + ": malformed field");
      }
      std::string key = field.substr(0, eq);
      std::string value = field.substr(eq + 1);
      if (key == "ts") rec.timestamp = std::stoull(value);
      else if (key == "v") rec.protocol_version = static_cast<uint8_t>(std::stoul(value));
      else if (key == "job") rec.job_id = value;
      else if (key == "round") rec.round = static_cast<uint32_t>(std::stoul(value));
      else if (key == "from") rec.sender = value;
      else if (key == "to") rec.recipient = value;
      else if (key == "type") rec.msg_type = msg_type_from_name(value);
      else if (key == "len") rec.payload_size = std::stoull(value);
      else if (key == "digest") {
        Bytes d = from_hex(value);
        if (d.size() != 32) throw DecodeError("audit: digest must be 32 bytes");
        std::copy(d.begin(), d.end(), rec.payload_digest.begin());
      } else if (key == "payload") {
        rec.payload = from_hex(value);
      } else {
        throw DecodeError("audit line " + std::to_string(lineno) + ": unknown field " + key);
      }
    }
    if (rec.payload.size() != rec.payload_size) {
      throw DecodeError("audit line " + std::to_string(lineno) + ": length mismatch");
    }
    if (sha256(rec.payload) != rec.payload_digest) {
      throw DecodeError("audit line " + std::to_string(lineno) + ": digest mismatch");
    }
    log.append(std::move(rec));
  }
  return log;
}

AuditLog AuditLog::read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("audit: cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

std::optional<LeakFinding> audit_find_leak(const AuditLog& log,
                                           std::span<const Bytes> forbidden) {
  for (size_t ri = 0; ri < log.records().size(); ++ri) {
    const Bytes& payload = log.records()[ri].payload;
    for (size_t pi = 0; pi < forbidden.size(); ++pi) {
      const Bytes& pat = forbidden[pi];
      if (pat.empty()) continue;
      auto it = std::search(payload.begin(), payload.end(), pat.begin(), pat.end());
      if (it != payload.end()) return LeakFinding{ri, pi};
    }
  }
  return std::nullopt;
}

std::string describe_record(const AuditRecord& rec) {
  std::ostringstream out;
  out << "ts=" << rec.timestamp << " job=" << rec.job_id << " round=" << rec.round
      << " from=" << rec.sender << " to=" << rec.recipient << " type="
      << msg_type_name(rec.msg_type) << " len=" << rec.payload_size;
  return out.str();
}

}  // namespace fedkit::net
