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

#include <stdexcept>
#include <string>

namespace fedkit {

// Base class for all fedkit failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ciphertext/key mismatch or malformed key material.
class KeyError : public Error {
 public:
  using Error::Error;
};

// A value is outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid algorithm parameters (epsilon <= 0, bad group, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Prime/key generation gave up after bounded retries.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Input file does not match its declared schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Data violates a structural invariant (duplicate ids, digest mismatch).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A peer deviated from the expected message sequence.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Malformed bytes on the wire or in a stored file.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// Channel handshake or frame authentication failed.
class AuthError : public Error {
 public:
  using Error::Error;
};

// recv() gave up waiting.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

// All simulated parties are blocked with nothing in flight.
class DeadlockError : public Error {
 public:
  using Error::Error;
};

// Job/schema configuration rejected before any message flows.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Linear system unsolvable (rank-deficient with lambda = 0).
class SolverError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace fedkit
