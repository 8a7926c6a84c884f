// Copyright 2026 The jmprob Authors
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

#ifndef JMPROB_RNG_HPP_
#define JMPROB_RNG_HPP_

#include <array>
#include <cstdint>

namespace jmprob {

/// Philox4x32-10 block: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. Output number k of stream (seed, stream_id)
/// is a pure function of (seed, stream_id, k): the Philox block for counter
/// (k, stream_id) under key seed, first two words joined into 64 bits.
/// Copying a stream copies its position; two copies produce the same values.
class RngStream {
   public:
    RngStream() = default;
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0)
        : seed_(seed), stream_id_(stream_id), counter_(counter) {
    }

    std::uint64_t seed() const {
        return seed_;
    }
    std::uint64_t stream_id() const {
        return stream_id_;
    }
    std::uint64_t counter() const {
        return counter_;
    }

    /// Value at an absolute counter position; does not advance.
    std::uint64_t bits_at(std::uint64_t counter) const;

    /// Consumes one counter.
    std::uint64_t next_bits() {
        return bits_at(counter_++);
    }
    /// Uniform on [0, 1) with 53 random bits; consumes one counter.
    double next_uniform() {
        return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
    }
    /// Uniform on (0, 1]; consumes one counter.
    double next_uniform_pos() {
        return 1.0 - next_uniform();
    }
    /// Jumps to an absolute counter position.
    void seek(std::uint64_t counter) {
        counter_ = counter;
    }

   private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace jmprob

#endif  // JMPROB_RNG_HPP_
