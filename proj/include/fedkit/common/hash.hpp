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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedkit {

using Bytes = std::vector<uint8_t>;
using Digest32 = std::array<uint8_t, 32>;

Digest32 sha256(std::span<const uint8_t> data);

// BLAKE2b-256; pass an empty key for the unkeyed variant.
Digest32 keyed_digest(std::span<const uint8_t> key, std::span<const uint8_t> data);

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws DecodeError on odd length / bad digit

inline std::span<const uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

// Stable seed derivation: fold a label into a base seed. Used to hand every
// party / subsystem its own RNG stream from one job seed.
uint64_t derive_seed(uint64_t base, std::string_view label);

}  // namespace fedkit
