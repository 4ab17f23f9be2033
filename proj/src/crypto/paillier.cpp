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

#include "fedkit/crypto/paillier.hpp"

#include "fedkit/common/error.hpp"
#include "fedkit/common/hash.hpp"
#include "fedkit/common/wire.hpp"

namespace fedkit::crypto {

namespace {

constexpr int kPrimeReps = 40;       // Miller-Rabin rounds
constexpr int kKeygenRetries = 1000;

mpz_class random_prime(unsigned bits, Rng& rng) {
  for (int i = 0; i < kKeygenRetries; ++i) {
    mpz_class cand = rng.mpz_bits(bits);
    mpz_setbit(cand.get_mpz_t(), 0);  // odd
    if (mpz_probab_prime_p(cand.get_mpz_t(), kPrimeReps) > 0) return cand;
    mpz_class next;
    mpz_nextprime(next.get_mpz_t(), cand.get_mpz_t());
    if (mpz_sizeinbase(next.get_mpz_t(), 2) == bits) return next;
  }
  throw GenerationError("paillier_keygen: no prime found after bounded retries");
}

std::string key_id_for(const mpz_class& n) {
  wire::Writer w;
  w.mpz(n);
  Digest32 d = keyed_digest({}, w.bytes());
  return to_hex(std::span<const uint8_t>(d.data(), 8));
}

// L(x) = (x - 1) / n, defined on x = 1 mod n.
mpz_class ell(const mpz_class& x, const mpz_class& n) { return (x - 1) / n; }

void check_key_match(const PaillierPublicKey& pk, const Ciphertext& c) {
  if (c.key_id != pk.key_id) {
    throw KeyError("ciphertext key_id " + c.key_id + " does not match key " + pk.key_id);
  }
}

}  // namespace

PaillierKeyPair paillier_from_primes(const mpz_class& p, const mpz_class& q) {
  if (p == q) throw ParameterError("paillier: p and q must be distinct");
  if (mpz_probab_prime_p(p.get_mpz_t(), kPrimeReps) == 0 ||
      mpz_probab_prime_p(q.get_mpz_t(), kPrimeReps) == 0) {
    throw ParameterError("paillier: p and q must be prime");
  }
  PaillierKeyPair kp;
  kp.p = p;
  kp.q = q;
  kp.pub.n = p * q;
  kp.pub.n2 = kp.pub.n * kp.pub.n;
  kp.pub.g = kp.pub.n + 1;
  kp.pub.key_id = key_id_for(kp.pub.n);

  mpz_class phi = (p - 1) * (q - 1);
  mpz_class gcd;
  mpz_gcd(gcd.get_mpz_t(), kp.pub.n.get_mpz_t(), phi.get_mpz_t());
  if (gcd != 1) throw ParameterError("paillier: gcd(n, phi) != 1");

  mpz_lcm(kp.lambda.get_mpz_t(), mpz_class(p - 1).get_mpz_t(), mpz_class(q - 1).get_mpz_t());
  // With g = n + 1: g^lambda = 1 + lambda*n (mod n^2), so L(g^lambda) = lambda
  // and mu = lambda^{-1} mod n.
  if (mpz_invert(kp.mu.get_mpz_t(), kp.lambda.get_mpz_t(), kp.pub.n.get_mpz_t()) == 0) {
    throw ParameterError("paillier: lambda not invertible mod n");
  }
  return kp;
}

PaillierKeyPair paillier_keygen(unsigned bits, uint64_t seed) {
  if (bits < 8) throw ParameterError("paillier_keygen: key size below 8 bits");
  Rng rng(derive_seed(seed, "paillier-keygen"));
  unsigned half = bits / 2;
  for (int attempt = 0; attempt < kKeygenRetries; ++attempt) {
    mpz_class p = random_prime(half, rng);
    mpz_class q = random_prime(bits - half, rng);
    if (p == q) continue;
    mpz_class n = p * q;
    mpz_class phi = (p - 1) * (q - 1);
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
    if (gcd != 1) continue;
    return paillier_from_primes(p, q);
  }
  throw GenerationError("paillier_keygen: exceeded retry budget");
}

Ciphertext paillier_encrypt_with_nonce(const PaillierPublicKey& pk, const mpz_class& m,
                                       const mpz_class& r) {
  if (m < 0 || m >= pk.n) throw DomainError("paillier_encrypt: plaintext out of [0, n)");
  mpz_class gcd;
  mpz_gcd(gcd.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t());
  if (r <= 0 || r >= pk.n || gcd != 1) {
    throw DomainError("paillier_encrypt: nonce not a unit mod n");
  }
  // (n+1)^m = 1 + m*n (mod n^2)
  mpz_class gm = (1 + m * pk.n) % pk.n2;
  mpz_class rn;
  mpz_powm(rn.get_mpz_t(), r.get_mpz_t(), pk.n.get_mpz_t(), pk.n2.get_mpz_t());
  return Ciphertext{(gm * rn) % pk.n2, pk.key_id};
}

Ciphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng) {
  return paillier_encrypt_with_nonce(pk, m, rng.mpz_unit(pk.n));
}

mpz_class paillier_decrypt(const PaillierKeyPair& kp, const Ciphertext& c) {
  check_key_match(kp.pub, c);
  if (c.value < 0 || c.value >= kp.pub.n2) {
    throw DomainError("paillier_decrypt: ciphertext out of range");
  }
  mpz_class x;
  mpz_powm(x.get_mpz_t(), c.value.get_mpz_t(), kp.lambda.get_mpz_t(), kp.pub.n2.get_mpz_t());
  return (ell(x, kp.pub.n) * kp.mu) % kp.pub.n;
}

Ciphertext he_add(const PaillierPublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
  check_key_match(pk, a);
  if (a.key_id != b.key_id) {
    throw KeyError("he_add: ciphertexts under different keys");
  }
  return Ciphertext{(a.value * b.value) % pk.n2, pk.key_id};
}

Ciphertext he_scalar_mul(const PaillierPublicKey& pk, const Ciphertext& c, const mpz_class& k) {
  check_key_match(pk, c);
  if (k < 0 || k >= pk.n) throw DomainError("he_scalar_mul: scalar out of [0, n)");
  mpz_class v;
  mpz_powm(v.get_mpz_t(), c.value.get_mpz_t(), k.get_mpz_t(), pk.n2.get_mpz_t());
  return Ciphertext{v, pk.key_id};
}

}  // namespace fedkit::crypto
