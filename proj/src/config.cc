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

#include "satdsm/config.h"

#include "satdsm/errors.h"
#include "satdsm/text_util.h"

namespace satdsm {

namespace {

std::string Unquote(std::string_view v) {
  v = Trim(v);
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\''))) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

// Drops a '#' comment that is not inside quotes.
std::string_view StripComment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const char* expected) {
  Throw(ErrorCode::ConfigError, "config key '" + key + "' = '" + value +
                                    "' is not " + expected);
}

}  // namespace

Config Config::Parse(std::string_view text) {
  Config cfg;
  std::string section;
  int line_no = 0;
  for (std::string_view raw : SplitLines(text)) {
    ++line_no;
    const std::string_view line = Trim(StripComment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        Throw(ErrorCode::ConfigError,
              "bad section header on line " + std::to_string(line_no));
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      Throw(ErrorCode::ConfigError,
            "expected key = value on line " + std::to_string(line_no));
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (key.empty()) {
      Throw(ErrorCode::ConfigError,
            "empty key on line " + std::to_string(line_no));
    }
    std::string value(Trim(line.substr(eq + 1)));
    // Bracketed lists are accepted and flattened into the comma form.
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      value = value.substr(1, value.size() - 2);
    }
    cfg.values_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

Config Config::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path));
}

void Config::Set(const std::string& key, std::string value) {
  values_[key] = std::move(value);
}

std::optional<std::string> Config::Lookup(const std::string& key) const {
  used_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::GetString(const std::string& key,
                              const std::string& fallback) const {
  const auto v = Lookup(key);
  return v ? Unquote(*v) : fallback;
}

double Config::GetDouble(const std::string& key, double fallback) const {
  const auto v = Lookup(key);
  if (!v) return fallback;
  const std::string s = Unquote(*v);
  const auto d = ParseDouble(s);
  if (!d) BadValue(key, s, "a number");
  return *d;
}

int Config::GetInt(const std::string& key, int fallback) const {
  const auto v = Lookup(key);
  if (!v) return fallback;
  const std::string s = Unquote(*v);
  const auto i = ParseInt(s);
  if (!i) BadValue(key, s, "an integer");
  return static_cast<int>(*i);
}

bool Config::GetBool(const std::string& key, bool fallback) const {
  const auto v = Lookup(key);
  if (!v) return fallback;
  const std::string s = Unquote(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  BadValue(key, s, "a boolean");
}

std::vector<std::string> Config::GetList(
    const std::string& key, const std::vector<std::string>& fallback) const {
  const auto v = Lookup(key);
  if (!v) return fallback;
  std::vector<std::string> out;
  for (const std::string& item : Split(*v, ',')) {
    std::string s = Unquote(item);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> Config::UnusedKeys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) out.push_back(key);
  }
  return out;
}

}  // namespace satdsm
