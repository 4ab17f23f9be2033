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

namespace fedkit::crypto {

// Signed fixed-point encoding of reals into residues. x maps to
// round(x * 2^scale_bits); negative values wrap into the upper half of the
// modulus (two's-complement style), so homomorphic addition of encodings
// matches real addition as long as magnitudes stay below half the modulus.

inline constexpr unsigned kDefaultScaleBits = 32;

// Encoding into [0, modulus) for Paillier plaintexts.
mpz_class fxp_encode(double x, unsigned scale_bits, const mpz_class& modulus);
double fxp_decode(const mpz_class& v, unsigned scale_bits, const mpz_class& modulus);

// Encoding into the 2^64 ring used by pairwise masking. Wraparound is the
// native unsigned overflow, so masked sums cancel exactly.
uint64_t fxp64_encode(double x, unsigned scale_bits);
double fxp64_decode(uint64_t v, unsigned scale_bits);

}  // namespace fedkit::crypto
