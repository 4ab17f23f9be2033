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

#include "fedkit/crypto/blinding.hpp"

#include <stdexcept>

#include "fedkit/common/error.hpp"
#include "fedkit/common/wire.hpp"

namespace fedkit::crypto {

namespace {

constexpr int kPrimeReps = 40;

// RFC 3526, section 3. 2^2048 - 2^1984 - 1 + 2^64 * { [2^1918 pi] + 124476 }
constexpr const char* kModp2048Hex =
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD1"
    "29024E088A67CC74020BBEA63B139B22514A08798E3404DD"
    "EF9519B3CD3A431B302B0A6DF25F14374FE1356D6D51C245"
    "E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3D"
    "C2007CB8A163BF0598DA48361C55D39A69163FA8FD24CF5F"
    "83655D23DCA3AD961C62F356208552BB9ED529077096966D"
    "670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9"
    "DE2BCBF6955817183995497CEA956AE515D2261898FA0510"
    "15728E5A8AACAA68FFFFFFFFFFFFFFFF";

void validate_group(const BlindingGroup& g) {
  if (g.p != 2 * g.q + 1) throw ParameterError("blinding group: p != 2q + 1");
  if (mpz_probab_prime_p(g.p.get_mpz_t(), kPrimeReps) == 0 ||
      mpz_probab_prime_p(g.q.get_mpz_t(), kPrimeReps) == 0) {
    throw ParameterError("blinding group: p and q must be prime");
  }
}

}  // namespace

const BlindingGroup& BlindingGroup::modp2048() {
  static const BlindingGroup group = [] {
    BlindingGroup g;
    g.p = mpz_class(kModp2048Hex, 16);
    g.q = (g.p - 1) / 2;
    return g;
  }();
  return group;
}

BlindingGroup BlindingGroup::generate(unsigned bits, uint64_t seed) {
  if (bits < 16) throw ParameterError("blinding group: at least 16 bits");
  Rng rng(derive_seed(seed, "blinding-group"));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    mpz_class q = rng.mpz_bits(bits - 1);
    mpz_setbit(q.get_mpz_t(), 0);
    if (mpz_probab_prime_p(q.get_mpz_t(), kPrimeReps) == 0) continue;
    mpz_class p = 2 * q + 1;
    if (mpz_probab_prime_p(p.get_mpz_t(), kPrimeReps) == 0) continue;
    BlindingGroup g{p, q};
    validate_group(g);
    return g;
  }
  throw GenerationError("blinding group: no safe prime found");
}

BlindingKey random_blinding_key(const BlindingGroup& group, Rng& rng) {
  validate_group(group);
  mpz_class a = 2 + rng.mpz_below(group.q - 2);  // [2, q-1]
  return BlindingKey{a};
}

mpz_class hash_to_group(std::span<const uint8_t> item, const BlindingGroup& group) {
  // Counter-mode expansion to p's width plus 64 slack bits, reduced mod p and
  // squared so the result lands in the order-q quadratic-residue subgroup.
  size_t want = group.element_bytes() + 8;
  Bytes stream;
  uint32_t counter = 0;
  while (stream.size() < want) {
    wire::Writer w;
    w.u32(counter++);
    w.blob(item);
    Digest32 block = sha256(w.bytes());
    stream.insert(stream.end(), block.begin(), block.end());
  }
  stream.resize(want);
  mpz_class x;
  mpz_import(x.get_mpz_t(), stream.size(), 1, 1, 1, 0, stream.data());
  x %= group.p;
  mpz_class e;
  mpz_powm_ui(e.get_mpz_t(), x.get_mpz_t(), 2, group.p.get_mpz_t());
  if (e == 0) e = 1;  // x = 0 has no subgroup image; map to identity
  return e;
}

mpz_class blind(const mpz_class& element, const BlindingKey& key, const BlindingGroup& group) {
  if (element <= 0 || element >= group.p) {
    throw DomainError("blind: element out of group range");
  }
  if (key.exponent < 1 || key.exponent >= group.q) {
    throw ParameterError("blind: exponent out of [1, q)");
  }
  mpz_class out;
  mpz_powm(out.get_mpz_t(), element.get_mpz_t(), key.exponent.get_mpz_t(), group.p.get_mpz_t());
  return out;
}

Bytes encode_element(const mpz_class& element, const BlindingGroup& group) {
  size_t width = group.element_bytes();
  Bytes out(width, 0);
  size_t count = 0;
  if (element != 0) {
    Bytes tmp(width);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, element.get_mpz_t());
    if (count > width) throw DomainError("encode_element: element too wide");
    std::copy(tmp.begin(), tmp.begin() + count, out.begin() + (width - count));
  }
  return out;
}

mpz_class decode_element(std::span<const uint8_t> bytes, const BlindingGroup& group) {
  if (bytes.size() != group.element_bytes()) {
    throw DecodeError("decode_element: wrong element width");
  }
  mpz_class out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  if (out <= 0 || out >= group.p) throw DecodeError("decode_element: not a group element");
  return out;
}

}  // namespace fedkit::crypto
