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

#include "fedkit/crypto/masking.hpp"

#include <sodium.h>

#include <cstring>

#include "fedkit/common/error.hpp"
#include "fedkit/common/hash.hpp"

namespace fedkit::crypto {

std::vector<uint64_t> mask_stream(const MaskSeed& seed, size_t dim) {
  std::vector<uint8_t> raw(dim * 8);
  std::vector<uint64_t> out(dim);
  if (dim == 0) return out;
  static const uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
  crypto_stream_chacha20(raw.data(), raw.size(), nonce, seed.data());
  for (size_t i = 0; i < dim; ++i) {
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v = (v << 8) | raw[i * 8 + b];
    out[i] = v;
  }
  return out;
}

std::vector<uint64_t> pairwise_masks(size_t my_index,
                                     std::span<const std::optional<MaskSeed>> peer_seeds,
                                     size_t dim) {
  if (my_index >= peer_seeds.size()) {
    throw ParameterError("pairwise_masks: my_index out of range");
  }
  std::vector<uint64_t> mask(dim, 0);
  for (size_t j = 0; j < peer_seeds.size(); ++j) {
    if (j == my_index) continue;
    if (!peer_seeds[j].has_value()) {
      throw ProtocolError("pairwise_masks: missing seed for peer " + std::to_string(j));
    }
    std::vector<uint64_t> stream = mask_stream(*peer_seeds[j], dim);
    if (j > my_index) {
      for (size_t k = 0; k < dim; ++k) mask[k] += stream[k];
    } else {
      for (size_t k = 0; k < dim; ++k) mask[k] -= stream[k];
    }
  }
  return mask;
}

MaskSeed derive_pair_seed(std::span<const uint8_t> shared_secret,
                          std::span<const uint8_t> context) {
  Digest32 d = keyed_digest(shared_secret, context);
  MaskSeed seed{};
  std::memcpy(seed.data(), d.data(), seed.size());
  return seed;
}

}  // namespace fedkit::crypto
