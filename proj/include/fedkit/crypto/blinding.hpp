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
#include <span>
#include <vector>

#include "fedkit/common/hash.hpp"
#include "fedkit/common/rng.hpp"

namespace fedkit::crypto {

// Prime-order group for commutative (Diffie-Hellman style) blinding. p is a
// safe prime, q = (p - 1) / 2; elements live in the order-q subgroup of
// quadratic residues, so hashed items raised to secret exponents commute:
// (H(x)^a)^b = (H(x)^b)^a.
struct BlindingGroup {
  mpz_class p;
  mpz_class q;

  size_t element_bytes() const { return (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8; }

  // RFC 3526 2048-bit MODP group (group 14); production default.
  static const BlindingGroup& modp2048();
  // Deterministic safe-prime search for test-sized groups.
  static BlindingGroup generate(unsigned bits, uint64_t seed);
};

struct BlindingKey {
  mpz_class exponent;  // in [2, q-1]
};

BlindingKey random_blinding_key(const BlindingGroup& group, Rng& rng);

// Hashes arbitrary bytes into the quadratic-residue subgroup.
mpz_class hash_to_group(std::span<const uint8_t> item, const BlindingGroup& group);

mpz_class blind(const mpz_class& element, const BlindingKey& key, const BlindingGroup& group);

// Fixed-width big-endian element encoding for ALIGN_* payloads.
Bytes encode_element(const mpz_class& element, const BlindingGroup& group);
mpz_class decode_element(std::span<const uint8_t> bytes, const BlindingGroup& group);

}  // namespace fedkit::crypto
