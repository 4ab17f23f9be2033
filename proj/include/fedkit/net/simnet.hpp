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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fedkit/net/audit.hpp"
#include "fedkit/net/envelope.hpp"

namespace fedkit::net {

// Deterministic in-process network. Every party runs as a cooperative
// thread; exactly one runs at a time, and whenever a party blocks on recv the
// scheduler picks the next runnable party with the seeded RNG. Per-channel
// delivery is FIFO; interleaving across channels is the seeded choice. Two
// runs with the same programs and seed produce byte-identical transcripts.
//
// Timeouts carry no duration in simulation: a finite-timeout recv fires only
// when no party can otherwise make progress. recv with no timeout on a
// channel that can never produce a message ends in a deadlock report.

class SimContext;
using PartyProgram = std::function<void(SimContext&)>;

struct SimResult {
  AuditLog transcript;
  bool deadlock = false;
  std::vector<PartyId> blocked_parties;            // nonempty iff deadlock
  std::map<PartyId, std::string> party_errors;     // uncaught exceptions
  bool ok() const { return !deadlock && party_errors.empty(); }
};

class SimNet {
 public:
  SimNet(std::string job_id, uint64_t seed);
  ~SimNet();

  SimNet(const SimNet&) = delete;
  SimNet& operator=(const SimNet&) = delete;

  void add_party(PartyId id, PartyProgram program);
  // Runs every program to completion. Call at most once.
  SimResult run();

 private:
  friend class SimContext;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class SimContext {
 public:
  const PartyId& self() const;
  const std::string& job_id() const;
  std::vector<PartyId> roster() const;
  // Stable per-party seed derived from the net seed.
  uint64_t party_seed() const;

  void send(const PartyId& to, MsgType type, uint32_t round, Bytes payload);
  // Blocks until the next envelope from `from` arrives; in-order per channel.
  Envelope recv(const PartyId& from);
  // As above but fails with TimeoutError when the run stalls.
  Envelope recv(const PartyId& from, uint64_t timeout_ms);

 private:
  friend class SimNet;
  SimContext(SimNet::Impl* impl, size_t party_index);
  Envelope recv_impl(const PartyId& from, bool finite_timeout);

  SimNet::Impl* impl_;
  size_t party_index_;
};

}  // namespace fedkit::net
