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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fedkit::crypto {

// Pairwise additive masking over the 2^64 ring. Party i adds
//   sum_{j > i} PRG(s_ij) - sum_{j < i} PRG(s_ij)
// to its vector; summed over all parties the masks cancel exactly, so the
// aggregator sees only the total. There is no dropout recovery: every peer
// seed must be present or the round aborts.

using MaskSeed = std::array<uint8_t, 32>;

// Expands a shared seed into `dim` ring elements (deterministic stream).
std::vector<uint64_t> mask_stream(const MaskSeed& seed, size_t dim);

// peer_seeds is indexed by party position; the entry at my_index is ignored,
// every other entry must be present. Throws ProtocolError on a missing seed.
std::vector<uint64_t> pairwise_masks(size_t my_index,
                                     std::span<const std::optional<MaskSeed>> peer_seeds,
                                     size_t dim);

// Symmetric pair seed from a key-agreement shared secret and a context label.
MaskSeed derive_pair_seed(std::span<const uint8_t> shared_secret, std::span<const uint8_t> context);

}  // namespace fedkit::crypto
