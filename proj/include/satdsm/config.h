// __BEGIN_LICENSE__
//  Copyright (c) 2026, The satdsm Authors. All rights reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License"); you may
//  not use this file except in compliance with the License. You may obtain a
//  copy of the License at
//  http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
// __END_LICENSE__

// Minimal TOML-style configuration: "[section]" headers, "key = value"
// lines, '#' comments, optionally quoted strings and comma-separated lists.
// Keys are addressed as "section.key"; keys before any header have no
// prefix.

#ifndef SATDSM_CONFIG_H
#define SATDSM_CONFIG_H

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace satdsm {

class Config {
 public:
  Config() = default;

  static Config Parse(std::string_view text);
  static Config Load(const std::filesystem::path& path);

  bool Has(const std::string& key) const { return values_.count(key) > 0; }
  void Set(const std::string& key, std::string value);

  // Typed getters return the fallback when the key is absent and throw
  // ConfigError when the value does not parse. Every key read is recorded.
  std::string GetString(const std::string& key,
                        const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  int GetInt(const std::string& key, int fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;
  std::vector<std::string> GetList(const std::string& key,
                                   const std::vector<std::string>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  // Keys present in the file that no getter asked for.
  std::vector<std::string> UnusedKeys() const;

 private:
  std::optional<std::string> Lookup(const std::string& key) const;

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

}  // namespace satdsm

#endif  // SATDSM_CONFIG_H
