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

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "fedkit/common/rng.hpp"

namespace fedkit::crypto {

// Paillier cryptosystem with the fast g = n + 1 generator. Additively
// homomorphic: E(a) * E(b) = E(a + b mod n) and E(a)^k = E(k * a mod n),
// both in Z*_{n^2}.
//
// Reference: Paillier, "Public-Key Cryptosystems Based on Composite Degree
// Residuosity Classes", EUROCRYPT 1999.

struct PaillierPublicKey {
  mpz_class n;       // modulus, product of two distinct primes
  mpz_class n2;      // n^2, cached
  mpz_class g;       // n + 1
  std::string key_id;

  bool operator==(const PaillierPublicKey& o) const {
    return n == o.n && key_id == o.key_id;
  }
};

struct PaillierKeyPair {
  PaillierPublicKey pub;
  mpz_class p, q;
  mpz_class lambda;  // lcm(p-1, q-1)
  mpz_class mu;      // lambda^{-1} mod n (valid for g = n + 1)

  bool operator==(const PaillierKeyPair& o) const {
    return pub == o.pub && p == o.p && q == o.q;
  }
};

struct Ciphertext {
  mpz_class value;     // unit in Z*_{n^2}
  std::string key_id;  // identifies the public key used
};

// Generates a key pair with an n of roughly `bits` bits. Deterministic for a
// fixed seed. Key sizes below 512 bits are for tests only.
PaillierKeyPair paillier_keygen(unsigned bits, uint64_t seed);

// Builds a key pair from known primes; used by small-modulus tests.
PaillierKeyPair paillier_from_primes(const mpz_class& p, const mpz_class& q);

Ciphertext paillier_encrypt(const PaillierPublicKey& pk, const mpz_class& m, Rng& rng);
// Encryption with caller-chosen nonce r (coprime to n); for tests and oracles.
Ciphertext paillier_encrypt_with_nonce(const PaillierPublicKey& pk, const mpz_class& m,
                                       const mpz_class& r);
mpz_class paillier_decrypt(const PaillierKeyPair& kp, const Ciphertext& c);

Ciphertext he_add(const PaillierPublicKey& pk, const Ciphertext& a, const Ciphertext& b);
Ciphertext he_scalar_mul(const PaillierPublicKey& pk, const Ciphertext& c, const mpz_class& k);

}  // namespace fedkit::crypto
