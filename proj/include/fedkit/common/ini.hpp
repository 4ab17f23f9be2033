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

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fedkit {

// Minimal sectioned key=value text format used for job configs and schema
// files. `#` starts a comment; section order and key order are preserved.
struct IniSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  bool has(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;
  // Typed getters throw ConfigError with the section/key named.
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
};

struct IniFile {
  std::vector<IniSection> sections;

  const IniSection* find(const std::string& name) const;
  const IniSection& require(const std::string& name) const;
  std::vector<const IniSection*> with_prefix(const std::string& prefix) const;

  static IniFile parse(const std::string& text);
  static IniFile load(const std::string& path);
};

}  // namespace fedkit
