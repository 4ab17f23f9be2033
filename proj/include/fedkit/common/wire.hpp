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

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "fedkit/common/error.hpp"
#include "fedkit/common/hash.hpp"

namespace fedkit::wire {

// Binary writer/reader pair for the fixed-order payload formats. All integers
// are big-endian; doubles travel as the big-endian image of their IEEE-754
// bits. Variable-length fields carry a u32 byte count. Nonnegative big
// integers are length-prefixed big-endian magnitudes.

class Writer {
 public:
  void u8(uint8_t v) { buf_.push_back(v); }
  void u16(uint16_t v) { put_be(v, 2); }
  void u32(uint32_t v) { put_be(v, 4); }
  void u64(uint64_t v) { put_be(v, 8); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }

  void raw(std::span<const uint8_t> bytes) {
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  }
  void blob(std::span<const uint8_t> bytes) {
    u32(static_cast<uint32_t>(bytes.size()));
    raw(bytes);
  }
  void str(std::string_view s) { blob(as_bytes(s)); }

  void mpz(const mpz_class& v) {
    if (v < 0) throw DomainError("wire: negative big integer");
    size_t count = 0;
    std::vector<uint8_t> tmp((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    if (v != 0) {
      mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    }
    tmp.resize(count);
    blob(tmp);
  }

  void f64_vec(std::span<const double> v) {
    u32(static_cast<uint32_t>(v.size()));
    for (double x : v) f64(x);
  }
  void u64_vec(std::span<const uint64_t> v) {
    u32(static_cast<uint32_t>(v.size()));
    for (uint64_t x : v) u64(x);
  }

  Bytes take() { return std::move(buf_); }
  const Bytes& bytes() const { return buf_; }

 private:
  void put_be(uint64_t v, int n) {
    for (int i = n - 1; i >= 0; --i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  Bytes buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8() { return static_cast<uint8_t>(get_be(1)); }
  uint16_t u16() { return static_cast<uint16_t>(get_be(2)); }
  uint32_t u32() { return static_cast<uint32_t>(get_be(4)); }
  uint64_t u64() { return get_be(8); }
  double f64() { return std::bit_cast<double>(u64()); }

  std::span<const uint8_t> raw(size_t n) {
    need(n);
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  Bytes blob() {
    uint32_t n = u32();
    auto s = raw(n);
    return Bytes(s.begin(), s.end());
  }
  std::string str() {
    Bytes b = blob();
    return std::string(b.begin(), b.end());
  }

  mpz_class mpz() {
    Bytes b = blob();
    mpz_class out = 0;
    if (!b.empty()) mpz_import(out.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return out;
  }

  std::vector<double> f64_vec() {
    uint32_t n = u32();
    std::vector<double> out(n);
    for (auto& x : out) x = f64();
    return out;
  }
  std::vector<uint64_t> u64_vec() {
    uint32_t n = u32();
    std::vector<uint64_t> out(n);
    for (auto& x : out) x = u64();
    return out;
  }

  bool exhausted() const { return pos_ == data_.size(); }
  size_t remaining() const { return data_.size() - pos_; }
  void expect_end() const {
    if (!exhausted()) throw DecodeError("wire: trailing bytes");
  }

 private:
  void need(size_t n) {
    if (pos_ + n > data_.size()) throw DecodeError("wire: truncated input");
  }
  uint64_t get_be(int n) {
    need(n);
    uint64_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 8) | data_[pos_++];
    return v;
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

}  // namespace fedkit::wire
