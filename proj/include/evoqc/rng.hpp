// Copyright 2026 The evoqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace evoqc {

/// Seeded random stream with a platform-independent draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so
/// bounded integers use rejection sampling and reals take the top 53 bits.
class RngStream {
   public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {
    }

    std::uint64_t seed() const {
        return seed_;
    }

    std::uint64_t next_u64() {
        return engine_();
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) {
            throw std::invalid_argument("uniform_below: bound must be positive");
        }
        // Values at or above `limit` would bias the modulo; redraw them.
        std::uint64_t excess = (0 - bound) % bound;
        std::uint64_t limit = 0 - excess;
        std::uint64_t r = engine_();
        while (excess != 0 && r >= limit) {
            r = engine_();
        }
        return r % bound;
    }

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform_between(std::uint64_t lo, std::uint64_t hi) {
        return lo + uniform_below(hi - lo + 1);
    }

    /// Uniform real in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace evoqc
