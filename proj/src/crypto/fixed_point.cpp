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

#include "fedkit/crypto/fixed_point.hpp"

#include <cmath>

#include "fedkit/common/error.hpp"

namespace fedkit::crypto {

mpz_class fxp_encode(double x, unsigned scale_bits, const mpz_class& modulus) {
  if (!std::isfinite(x)) throw DomainError("fxp_encode: non-finite value");
  double scaled = std::round(std::ldexp(std::abs(x), static_cast<int>(scale_bits)));
  mpz_class mag;
  mpz_set_d(mag.get_mpz_t(), scaled);
  if (2 * mag >= modulus) throw DomainError("fxp_encode: value exceeds modulus range");
  if (x < 0 && mag != 0) return modulus - mag;
  return mag;
}

double fxp_decode(const mpz_class& v, unsigned scale_bits, const mpz_class& modulus) {
  if (v < 0 || v >= modulus) throw DomainError("fxp_decode: residue out of range");
  mpz_class centered = v;
  if (2 * v >= modulus) centered = v - modulus;
  return std::ldexp(centered.get_d(), -static_cast<int>(scale_bits));
}

uint64_t fxp64_encode(double x, unsigned scale_bits) {
  if (!std::isfinite(x)) throw DomainError("fxp64_encode: non-finite value");
  double scaled = std::round(std::ldexp(x, static_cast<int>(scale_bits)));
  if (std::abs(scaled) >= 0x1.0p62) throw DomainError("fxp64_encode: value exceeds range");
  return static_cast<uint64_t>(static_cast<int64_t>(scaled));
}

double fxp64_decode(uint64_t v, unsigned scale_bits) {
  return std::ldexp(static_cast<double>(static_cast<int64_t>(v)),
                    -static_cast<int>(scale_bits));
}

}  // namespace fedkit::crypto
