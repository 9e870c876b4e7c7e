// Copyright 2026 The colorhook Authors
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

#ifndef COLORHOOK_BIT_VECTOR_H
#define COLORHOOK_BIT_VECTOR_H

#include <cstddef>
#include <cstdint>
#include <vector>

namespace colorhook {

/// Fixed-length packed bit vector.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool value) {
        uint64_t bit = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= bit;
        } else {
            words_[k >> 6] &= ~bit;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    bool none() const {
        for (auto w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }
    size_t count() const {
        size_t total = 0;
        for (auto w : words_) {
            total += static_cast<size_t>(__builtin_popcountll(w));
        }
        return total;
    }
    std::vector<uint32_t> ones() const {
        std::vector<uint32_t> out;
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t bits = words_[w];
            while (bits) {
                out.push_back(static_cast<uint32_t>(w * 64 + static_cast<size_t>(__builtin_ctzll(bits))));
                bits &= bits - 1;
            }
        }
        return out;
    }
    BitVector &operator^=(const BitVector &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    const std::vector<uint64_t> &words() const {
        return words_;
    }
    std::vector<uint64_t> &words() {
        return words_;
    }
    bool operator==(const BitVector &other) const = default;

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace colorhook

#endif
