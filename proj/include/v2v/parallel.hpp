// SPDX-License-Identifier: Apache-2.0
//
// v2v-gbsm: 3D non-stationary wideband MIMO V2V channel simulator
// Copyright (C) 2026 The v2v-gbsm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef V2V_PARALLEL_HPP
#define V2V_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace v2v
{
    // requested > 0 wins, then V2V_GBSM_THREADS, then the hardware concurrency (at least 1)
    int resolve_threads(int requested = 0);

    // Runs fn(i) for i in [0, n) on up to `threads` workers using static contiguous chunks.
    // Callers write results into per-index slots so reductions stay in index order.
    void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);
}

#endif
