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

#ifndef SATDSM_TEXT_UTIL_H
#define SATDSM_TEXT_UTIL_H

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace satdsm {

std::vector<std::string_view> SplitLines(std::string_view text);
std::vector<std::string> Split(std::string_view text, char sep);
std::string_view Trim(std::string_view s);
std::string_view FirstToken(std::string_view s);

// Locale-independent full-token parse. Accepts a leading '+'.
std::optional<double> ParseDouble(std::string_view token);
std::optional<long long> ParseInt(std::string_view token);

// Shortest-safe round-trip representation with 17 significant digits.
std::string FormatDouble17(double v);

std::string ReadTextFile(const std::filesystem::path& path);
// Writes to a sibling temporary and renames it into place.
void WriteTextFile(const std::filesystem::path& path, std::string_view data);

}  // namespace satdsm

#endif  // SATDSM_TEXT_UTIL_H
