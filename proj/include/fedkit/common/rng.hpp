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
#include <random>
#include <span>
#include <string_view>

namespace fedkit {

// Deterministic random source. Every protocol and trainer draws all of its
// randomness through one of these, seeded from the job seed, so identical
// (config, seed) pairs replay byte-identically. Gaussian/Laplace sampling is
// hand-rolled because the std distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  ~Rng();

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&& other) noexcept;
  Rng& operator=(Rng&&) = delete;

  uint64_t next_u64();
  // Uniform double in [0, 1).
  double next_unit();
  // Uniform double in (0, 1), endpoints excluded.
  double next_open_unit();
  double next_gaussian();
  // Uniform in [0, n).
  uint64_t below(uint64_t n);
  void fill_bytes(std::span<uint8_t> out);

  // Uniform mpz in [0, n).
  mpz_class mpz_below(const mpz_class& n);
  // Uniform mpz with exactly `bits` bits (top bit set).
  mpz_class mpz_bits(unsigned bits);
  // Uniform unit in [1, n) with gcd(r, n) = 1.
  mpz_class mpz_unit(const mpz_class& n);

  // Independent child stream; derivation depends only on (seed, label).
  Rng fork(std::string_view label) const;

 private:
  uint64_t seed_;
  std::mt19937_64 gen_;
  gmp_randstate_t gmp_state_;
  bool owns_gmp_ = true;
  bool has_spare_gaussian_ = false;
  double spare_gaussian_ = 0.0;
};

}  // namespace fedkit
