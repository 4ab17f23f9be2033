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

#include "fedkit/common/ini.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fedkit/common/error.hpp"

namespace fedkit {

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

bool IniSection::has(const std::string& key) const { return find(key).has_value(); }

std::optional<std::string> IniSection::find(const std::string& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string IniSection::get(const std::string& key) const {
  auto v = find(key);
  if (!v) throw ConfigError("[" + name + "] missing required key '" + key + "'");
  return *v;
}

std::string IniSection::get_or(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

long long IniSection::get_int(const std::string& key) const {
  const std::string v = get(key);
  try {
    size_t pos = 0;
    long long out = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("[" + name + "] key '" + key + "': not an integer: " + v);
  }
}

long long IniSection::get_int_or(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double IniSection::get_double(const std::string& key) const {
  const std::string v = get(key);
  try {
    size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("[" + name + "] key '" + key + "': not a number: " + v);
  }
}

double IniSection::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool IniSection::get_bool(const std::string& key) const {
  std::string v = get(key);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("[" + name + "] key '" + key + "': not a boolean: " + v);
}

bool IniSection::get_bool_or(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

const IniSection* IniFile::find(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const IniSection& IniFile::require(const std::string& name) const {
  const IniSection* s = find(name);
  if (s == nullptr) throw ConfigError("missing required section [" + name + "]");
  return *s;
}

std::vector<const IniSection*> IniFile::with_prefix(const std::string& prefix) const {
  std::vector<const IniSection*> out;
  for (const auto& s : sections) {
    if (s.name.rfind(prefix, 0) == 0) out.push_back(&s);
  }
  return out;
}

IniFile IniFile::parse(const std::string& text) {
  IniFile file;
  std::istringstream in(text);
  std::string line;
  IniSection* current = nullptr;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty section");
      if (file.find(name) != nullptr) {
        throw ConfigError("line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
      }
      file.sections.push_back(IniSection{name, {}});
      current = &file.sections.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    if (current == nullptr) {
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (current->has(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    current->entries.emplace_back(key, value);
  }
  return file;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

}  // namespace fedkit
