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

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "fedkit/common/rng.hpp"
#include "fedkit/net/audit.hpp"
#include "fedkit/net/envelope.hpp"

namespace fedkit::net {

// Socket transport: mutually authenticated, encrypted point-to-point
// channels. The handshake exchanges ephemeral key-agreement public keys and
// nonces, each side signs the full handshake transcript with its static
// Ed25519 identity key, and payload frames are sealed with
// ChaCha20-Poly1305 under per-direction session keys and message counters.

struct SignIdentity {
  PartyId id;
  std::array<uint8_t, 32> public_key{};
  std::array<uint8_t, 64> secret_key{};

  static SignIdentity generate(PartyId id, Rng& rng);
};

struct PeerInfo {
  PartyId id;
  std::array<uint8_t, 32> public_key{};
};

class SocketChannel {
 public:
  ~SocketChannel();
  SocketChannel(SocketChannel&&) noexcept;
  SocketChannel& operator=(SocketChannel&&) noexcept;
  SocketChannel(const SocketChannel&) = delete;
  SocketChannel& operator=(const SocketChannel&) = delete;

  // Dials host:port and runs the client side of the handshake.
  static SocketChannel connect(const std::string& host, uint16_t port,
                               const SignIdentity& self, const PeerInfo& peer,
                               Rng& rng, int timeout_ms = 5000);

  const PartyId& peer_id() const;

  // Thread-safe against one concurrent recv (one reader, one writer).
  void send(const Envelope& env);
  Envelope recv(std::optional<int> timeout_ms = std::nullopt);

  // When set, every sent envelope is recorded (wall-clock ms timestamps).
  void set_audit(AuditLog* audit);

 private:
  friend class SocketListener;
  struct Impl;
  explicit SocketChannel(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

class SocketListener {
 public:
  // port 0 binds an ephemeral port (see port()).
  explicit SocketListener(uint16_t port);
  ~SocketListener();
  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;

  uint16_t port() const;

  // Accepts one connection and runs the server side of the handshake;
  // refuses peers that fail authentication.
  SocketChannel accept(const SignIdentity& self, const PeerInfo& expected_peer,
                       Rng& rng, int timeout_ms = 5000);

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

}  // namespace fedkit::net
