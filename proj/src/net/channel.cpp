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

#include "fedkit/net/channel.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sodium.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <mutex>

#include "fedkit/common/error.hpp"
#include "fedkit/common/wire.hpp"

namespace fedkit::net {

namespace {

constexpr uint8_t kHandshakeVersion = kProtocolVersion;
constexpr size_t kNonceLen = 32;

void close_fd(int& fd) {
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void wait_readable(int fd, std::optional<int> timeout_ms, int64_t deadline) {
  pollfd pfd{fd, POLLIN, 0};
  int wait = -1;
  if (timeout_ms.has_value()) {
    wait = static_cast<int>(std::max<int64_t>(0, deadline - now_ms()));
  }
  int rc = ::poll(&pfd, 1, wait);
  if (rc == 0) throw TimeoutError("channel: recv timed out");
  if (rc < 0) throw Error("channel: poll failed");
}

void read_exact(int fd, uint8_t* buf, size_t n, std::optional<int> timeout_ms) {
  int64_t deadline = timeout_ms.has_value() ? now_ms() + *timeout_ms : 0;
  size_t got = 0;
  while (got < n) {
    if (timeout_ms.has_value()) wait_readable(fd, timeout_ms, deadline);
    ssize_t rc = ::recv(fd, buf + got, n - got, 0);
    if (rc == 0) throw Error("channel: peer closed connection");
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("channel: recv failed: ") + std::strerror(errno));
    }
    got += static_cast<size_t>(rc);
  }
}

void write_all(int fd, const uint8_t* buf, size_t n) {
  size_t sent = 0;
  while (sent < n) {
    ssize_t rc = ::send(fd, buf + sent, n - sent, MSG_NOSIGNAL);
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("channel: send failed: ") + std::strerror(errno));
    }
    sent += static_cast<size_t>(rc);
  }
}

void write_frame(int fd, std::span<const uint8_t> body) {
  if (body.size() > kMaxFrameBytes) throw ProtocolError("channel: frame exceeds max size");
  uint8_t len[4];
  for (int i = 0; i < 4; ++i) len[i] = static_cast<uint8_t>(body.size() >> (24 - 8 * i));
  write_all(fd, len, 4);
  write_all(fd, body.data(), body.size());
}

Bytes read_frame(int fd, std::optional<int> timeout_ms) {
  uint8_t len[4];
  read_exact(fd, len, 4, timeout_ms);
  uint64_t n = (uint64_t(len[0]) << 24) | (uint64_t(len[1]) << 16) | (uint64_t(len[2]) << 8) |
               uint64_t(len[3]);
  if (n > kMaxFrameBytes) throw DecodeError("channel: oversized frame rejected");
  Bytes body(n);
  if (n > 0) read_exact(fd, body.data(), n, timeout_ms);
  return body;
}

struct Hello {
  uint8_t version;
  std::string party_id;
  std::array<uint8_t, crypto_kx_PUBLICKEYBYTES> kx_pub;
  std::array<uint8_t, kNonceLen> nonce;
  Bytes raw;  // exact bytes as sent, covered by the signature
};

Bytes encode_hello(const Hello& h) {
  wire::Writer w;
  w.u8(h.version);
  w.str(h.party_id);
  w.raw(h.kx_pub);
  w.raw(h.nonce);
  return w.take();
}

Hello decode_hello(Bytes raw) {
  wire::Reader r(raw);
  Hello h;
  h.version = r.u8();
  h.party_id = r.str();
  auto pk = r.raw(h.kx_pub.size());
  std::copy(pk.begin(), pk.end(), h.kx_pub.begin());
  auto nonce = r.raw(kNonceLen);
  std::copy(nonce.begin(), nonce.end(), h.nonce.begin());
  r.expect_end();
  h.raw = std::move(raw);
  return h;
}

Digest32 transcript_digest(const Hello& client, const Hello& server) {
  wire::Writer w;
  w.str("fedkit-handshake-v1");
  w.blob(client.raw);
  w.blob(server.raw);
  return sha256(w.bytes());
}

}  // namespace

SignIdentity SignIdentity::generate(PartyId id, Rng& rng) {
  if (sodium_init() < 0) throw Error("libsodium initialization failed");
  std::array<uint8_t, crypto_sign_SEEDBYTES> seed{};
  rng.fill_bytes(seed);
  SignIdentity out;
  out.id = std::move(id);
  crypto_sign_seed_keypair(out.public_key.data(), out.secret_key.data(), seed.data());
  return out;
}

struct SocketChannel::Impl {
  int fd = -1;
  PartyId self_id;
  PartyId peer;
  std::array<uint8_t, crypto_kx_SESSIONKEYBYTES> tx_key{};
  std::array<uint8_t, crypto_kx_SESSIONKEYBYTES> rx_key{};
  uint64_t tx_counter = 0;
  uint64_t rx_counter = 0;
  std::mutex send_mu;
  std::mutex recv_mu;
  AuditLog* audit = nullptr;

  ~Impl() { close_fd(fd); }

  // Runs the handshake over an already-connected socket.
  void handshake(const SignIdentity& self, const PeerInfo& peer_info, bool is_client,
                 Rng& rng, int timeout_ms) {
    self_id = self.id;
    Hello mine;
    mine.version = kHandshakeVersion;
    mine.party_id = self.id;
    std::array<uint8_t, crypto_kx_SEEDBYTES> kx_seed{};
    rng.fill_bytes(kx_seed);
    std::array<uint8_t, crypto_kx_SECRETKEYBYTES> kx_sk{};
    crypto_kx_seed_keypair(mine.kx_pub.data(), kx_sk.data(), kx_seed.data());
    rng.fill_bytes(mine.nonce);
    mine.raw = encode_hello(mine);

    write_frame(fd, mine.raw);
    Hello theirs = decode_hello(read_frame(fd, timeout_ms));
    if (theirs.version != kHandshakeVersion) {
      throw DecodeError("channel: protocol version mismatch");
    }
    if (theirs.party_id != peer_info.id) {
      throw AuthError("channel: unexpected peer identity " + theirs.party_id);
    }

    const Hello& client = is_client ? mine : theirs;
    const Hello& server = is_client ? theirs : mine;
    Digest32 digest = transcript_digest(client, server);

    std::array<uint8_t, crypto_sign_BYTES> sig{};
    crypto_sign_detached(sig.data(), nullptr, digest.data(), digest.size(),
                         self.secret_key.data());
    write_frame(fd, sig);

    Bytes peer_sig = read_frame(fd, timeout_ms);
    if (peer_sig.size() != crypto_sign_BYTES ||
        crypto_sign_verify_detached(peer_sig.data(), digest.data(), digest.size(),
                                    peer_info.public_key.data()) != 0) {
      throw AuthError("channel: peer signature verification failed");
    }

    int rc;
    if (is_client) {
      rc = crypto_kx_client_session_keys(rx_key.data(), tx_key.data(), mine.kx_pub.data(),
                                         kx_sk.data(), theirs.kx_pub.data());
    } else {
      rc = crypto_kx_server_session_keys(rx_key.data(), tx_key.data(), mine.kx_pub.data(),
                                         kx_sk.data(), theirs.kx_pub.data());
    }
    if (rc != 0) throw AuthError("channel: session key agreement failed");
    peer = peer_info.id;
    sodium_memzero(kx_sk.data(), kx_sk.size());
  }
};

SocketChannel::SocketChannel(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
SocketChannel::~SocketChannel() = default;
SocketChannel::SocketChannel(SocketChannel&&) noexcept = default;
SocketChannel& SocketChannel::operator=(SocketChannel&&) noexcept = default;

SocketChannel SocketChannel::connect(const std::string& host, uint16_t port,
                                     const SignIdentity& self, const PeerInfo& peer,
                                     Rng& rng, int timeout_ms) {
  if (sodium_init() < 0) throw Error("libsodium initialization failed");
  auto impl = std::make_unique<Impl>();
  impl->fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (impl->fd < 0) throw Error("channel: socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw Error("channel: bad address " + host);
  }
  if (::connect(impl->fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw Error("channel: connect to " + host + " failed: " + std::strerror(errno));
  }
  impl->handshake(self, peer, /*is_client=*/true, rng, timeout_ms);
  return SocketChannel(std::move(impl));
}

const PartyId& SocketChannel::peer_id() const { return impl_->peer; }

void SocketChannel::set_audit(AuditLog* audit) { impl_->audit = audit; }

void SocketChannel::send(const Envelope& env) {
  Bytes plain = serialize_envelope(env);
  std::lock_guard lock(impl_->send_mu);
  uint8_t nonce[crypto_aead_chacha20poly1305_ietf_NPUBBYTES] = {0};
  uint64_t ctr = impl_->tx_counter++;
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<uint8_t>(ctr >> (56 - 8 * i));
  Bytes sealed(plain.size() + crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long sealed_len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(sealed.data(), &sealed_len, plain.data(),
                                            plain.size(), nullptr, 0, nullptr, nonce,
                                            impl_->tx_key.data());
  sealed.resize(sealed_len);
  write_frame(impl_->fd, sealed);
  if (impl_->audit != nullptr) {
    impl_->audit->append(env, static_cast<uint64_t>(now_ms()));
  }
}

Envelope SocketChannel::recv(std::optional<int> timeout_ms) {
  std::lock_guard lock(impl_->recv_mu);
  Bytes sealed = read_frame(impl_->fd, timeout_ms);
  uint8_t nonce[crypto_aead_chacha20poly1305_ietf_NPUBBYTES] = {0};
  uint64_t ctr = impl_->rx_counter++;
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<uint8_t>(ctr >> (56 - 8 * i));
  if (sealed.size() < crypto_aead_chacha20poly1305_ietf_ABYTES) {
    throw DecodeError("channel: frame too short");
  }
  Bytes plain(sealed.size() - crypto_aead_chacha20poly1305_ietf_ABYTES);
  unsigned long long plain_len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(plain.data(), &plain_len, nullptr,
                                                sealed.data(), sealed.size(), nullptr, 0,
                                                nonce, impl_->rx_key.data()) != 0) {
    throw AuthError("channel: frame authentication failed");
  }
  plain.resize(plain_len);
  return deserialize_envelope(plain);
}

SocketListener::SocketListener(uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error("listener: socket() failed");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw Error(std::string("listener: bind failed: ") + std::strerror(errno));
  }
  if (::listen(fd_, 8) != 0) throw Error("listener: listen failed");
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

SocketListener::~SocketListener() { close_fd(fd_); }

uint16_t SocketListener::port() const { return port_; }

SocketChannel SocketListener::accept(const SignIdentity& self, const PeerInfo& expected_peer,
                                     Rng& rng, int timeout_ms) {
  pollfd pfd{fd_, POLLIN, 0};
  int rc = ::poll(&pfd, 1, timeout_ms);
  if (rc == 0) throw TimeoutError("listener: accept timed out");
  if (rc < 0) throw Error("listener: poll failed");
  int conn = ::accept(fd_, nullptr, nullptr);
  if (conn < 0) throw Error("listener: accept failed");
  auto impl = std::make_unique<SocketChannel::Impl>();
  impl->fd = conn;
  impl->handshake(self, expected_peer, /*is_client=*/false, rng, timeout_ms);
  return SocketChannel(std::move(impl));
}

}  // namespace fedkit::net
