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

#include "fedkit/common/rng.hpp"

#include <cmath>

#include "fedkit/common/error.hpp"
#include "fedkit/common/hash.hpp"

namespace fedkit {

Rng::Rng(uint64_t seed) : seed_(seed), gen_(seed) {
  gmp_randinit_mt(gmp_state_);
  gmp_randseed_ui(gmp_state_, static_cast<unsigned long>(seed ^ 0x9e3779b97f4a7c15ULL));
}

Rng::~Rng() {
  if (owns_gmp_) gmp_randclear(gmp_state_);
}

Rng::Rng(Rng&& other) noexcept
    : seed_(other.seed_),
      gen_(other.gen_),
      has_spare_gaussian_(other.has_spare_gaussian_),
      spare_gaussian_(other.spare_gaussian_) {
  gmp_state_[0] = other.gmp_state_[0];
  owns_gmp_ = other.owns_gmp_;
  other.owns_gmp_ = false;
}

uint64_t Rng::next_u64() { return gen_(); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_open_unit() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_gaussian() {
  if (has_spare_gaussian_) {
    has_spare_gaussian_ = false;
    return spare_gaussian_;
  }
  // Box-Muller on open-interval uniforms keeps log() finite.
  double u1 = next_open_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_gaussian_ = r * std::sin(theta);
  has_spare_gaussian_ = true;
  return r * std::cos(theta);
}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw ParameterError("Rng::below: n must be positive");
  // Rejection sampling for an unbiased draw.
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

void Rng::fill_bytes(std::span<uint8_t> out) {
  size_t i = 0;
  while (i < out.size()) {
    uint64_t x = next_u64();
    for (int b = 0; b < 8 && i < out.size(); ++b, ++i) {
      out[i] = static_cast<uint8_t>(x >> (8 * b));
    }
  }
}

mpz_class Rng::mpz_below(const mpz_class& n) {
  if (n <= 0) throw ParameterError("Rng::mpz_below: n must be positive");
  mpz_class out;
  mpz_urandomm(out.get_mpz_t(), gmp_state_, n.get_mpz_t());
  return out;
}

mpz_class Rng::mpz_bits(unsigned bits) {
  if (bits == 0) throw ParameterError("Rng::mpz_bits: bits must be positive");
  mpz_class out;
  mpz_urandomb(out.get_mpz_t(), gmp_state_, bits);
  mpz_setbit(out.get_mpz_t(), bits - 1);
  return out;
}

mpz_class Rng::mpz_unit(const mpz_class& n) {
  if (n <= 1) throw ParameterError("Rng::mpz_unit: modulus too small");
  mpz_class r, g;
  do {
    r = mpz_below(n);
    if (r == 0) continue;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
  } while (r == 0 || g != 1);
  return r;
}

Rng Rng::fork(std::string_view label) const {
  return Rng(derive_seed(seed_, label));
}

}  // namespace fedkit
