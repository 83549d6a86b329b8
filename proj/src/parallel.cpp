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

#include "v2v/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace v2v
{
    int resolve_threads(int requested)
    {
        if (requested > 0)
            return requested;
        if (const char *env = std::getenv("V2V_GBSM_THREADS"))
        {
            try
            {
                int n = std::stoi(env);
                if (n > 0)
                    return n;
            }
            catch (const std::exception &)
            {
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn)
    {
        std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }

        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w]
                              {
                std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
                try
                {
                    for (std::size_t i = lo; i < hi; ++i)
                        fn(i);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                } });
        }
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
