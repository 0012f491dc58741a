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

#ifndef SATDSM_PARALLEL_H
#define SATDSM_PARALLEL_H

#include <cstddef>
#include <functional>

namespace satdsm {

// Process-wide worker count used by ParallelFor. Values < 1 select the
// hardware concurrency.
void SetNumThreads(int num_threads);
int NumThreads();

// Runs fn(i) for every i in [begin, end). Indices are split into contiguous
// chunks, one per worker. fn must only write to state owned by index i, which
// makes results independent of the worker count. The first exception thrown
// by any worker is rethrown on the calling thread.
void ParallelFor(std::size_t begin, std::size_t end,
                 const std::function<void(std::size_t)>& fn);

}  // namespace satdsm

#endif  // SATDSM_PARALLEL_H
