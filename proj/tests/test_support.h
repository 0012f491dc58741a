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

// Fixtures shared by the unit tests.

#ifndef SATDSM_TESTS_TEST_SUPPORT_H
#define SATDSM_TESTS_TEST_SUPPORT_H

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <utility>

#include <gtest/gtest.h>

#include "satdsm/errors.h"
#include "satdsm/synthetic_scene.h"

namespace satdsm::testing {

// Fresh, empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("satdsm_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline SyntheticView MakeView(const SyntheticSceneSpec& spec, double off_nadir,
                              double azimuth, int size = -1) {
  SyntheticView v;
  v.off_nadir_deg = off_nadir;
  v.azimuth_deg = azimuth;
  v.gsd = spec.cell_size;
  v.width = size > 0 ? size : spec.cols;
  v.height = size > 0 ? size : spec.rows;
  v.center = spec.Center();
  return v;
}

inline SyntheticSceneSpec FlatSpec(int cells, double ground = 20.0) {
  SyntheticSceneSpec s;
  s.cols = cells;
  s.rows = cells;
  s.ground_alt = ground;
  return s;
}

inline std::pair<double, double> AltBounds(const DsmGrid& dsm,
                                           double above = 100.0) {
  const auto r = dsm.ValidRange();
  return {r->first - 100.0, r->second + above};
}

}  // namespace satdsm::testing

// Expects `stmt` to throw satdsm::Error with the given code.
#define EXPECT_SATDSM_ERROR(stmt, error_code)                            \
  do {                                                                   \
    try {                                                                \
      stmt;                                                              \
      ADD_FAILURE() << "expected " #error_code;                          \
    } catch (const ::satdsm::Error& e) {                                 \
      EXPECT_EQ(e.code(), ::satdsm::ErrorCode::error_code) << e.what();  \
    }                                                                    \
  } while (0)

#endif  // SATDSM_TESTS_TEST_SUPPORT_H
