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

#ifndef V2V_RNG_HPP
#define V2V_RNG_HPP

#include <cstdint>
#include <random>

namespace v2v
{
    // splitmix64 finaliser; the stream-splitting rule is sub_seed = splitmix64(seed ^ splitmix64(stream + 1))
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
    {
        return splitmix64(seed ^ splitmix64(stream + 1));
    }

    // mt19937_64 with a fixed, implementation-independent mapping to doubles
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        // Uniform in [0, 1) from the top 53 bits
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        // Uniform in (0, 1]
        double uniform_open0() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

        std::uint64_t next() { return engine_(); }

        // Uniform integer in [0, n) by rejection, independent of the standard library distributions
        std::uint64_t below(std::uint64_t n)
        {
            std::uint64_t limit = ~0ULL - (~0ULL % n);
            std::uint64_t x;
            do
                x = engine_();
            while (x >= limit);
            return x % n;
        }

    private:
        std::mt19937_64 engine_;
    };
}

#endif
