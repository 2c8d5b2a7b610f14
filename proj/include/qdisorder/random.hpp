// Copyright 2026 The qdisorder Authors
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

#include <array>
#include <cstddef>
#include <cstdint>

namespace qdisorder {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a
/// pure function of (counter, key), so every (seed, realization index) pair
/// owns an independent substream and results do not depend on scheduling.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

/// Sequential standard-normal draws from the substream (seed, index, stream).
class GaussianStream {
   public:
    GaussianStream(std::uint64_t seed, std::uint64_t index, std::uint32_t stream = 0);

    double operator()();

   private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    std::array<double, 2> cache_{};
    std::size_t cached_ = 0;
};

/// Uniform double in (0, 1] from the top 53 bits of x.
double uniform_open_closed(std::uint64_t x);

}  // namespace qdisorder
