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


#ifndef COLORHOOK_DECODE_H
#define COLORHOOK_DECODE_H

#include <cstdint>
#include <vector>

#include "colorhook/bit_vector.h"
#include "colorhook/noise.h"

namespace colorhook {

struct DecodeResult {
    bool predicted_flip = false;
    /// Chosen fault classes, sorted.
    std::vector<uint32_t> fault_set;
    double cost = 0;
    /// False when the open set was truncated and the answer may not be the cheapest.
    bool exact = true;
};

inline constexpr size_t DEFAULT_BEAM = 10000;

/// Cost of a class of probability q: -log(q / (1 - q)).
double class_cost(double probability);

/// Most likely error decoder: A* over sets of fault classes.
///
/// A node is the residual syndrome left by the classes chosen so far. Expansion flips one class
/// touching the residual detector with the fewest incident classes. The heuristic charges each
/// residual detector d the cheapest share cost(e) / |e & residual| over the classes e touching
/// it; any completion pays at least that much, so the first goal reached is optimal. Children are
/// queued with the parent's estimate minus the step cost and get their own estimate when first
/// popped. A residual reached again more cheaply is reopened. When more than 2 * beam nodes are
/// open, the best beam are kept and the result is no longer exact; if that empties the queue the
/// search restarts with twice the beam. Ties go to the deeper node, then to the node created
/// first.
class MostLikelyErrorDecoder {
   public:
    explicit MostLikelyErrorDecoder(const DetectorErrorModel &dem, size_t beam = DEFAULT_BEAM);

    /// Throws std::invalid_argument on a length mismatch and std::runtime_error ("no solution")
    /// when no set of classes produces the syndrome.
    DecodeResult decode(const BitVector &syndrome) const;

    const DetectorErrorModel &dem() const {
        return dem_;
    }

   private:
    double heuristic(const std::vector<uint32_t> &active) const;
    /// False when truncation emptied the queue before a goal was reached.
    bool search(const BitVector &syndrome, size_t beam, DecodeResult &out) const;

    const DetectorErrorModel &dem_;
    size_t beam_;
    std::vector<double> costs_;
    std::vector<std::vector<uint32_t>> incident_;
    std::vector<uint64_t> detector_keys_;
};

DecodeResult decode(const DetectorErrorModel &dem, const BitVector &syndrome, size_t beam = DEFAULT_BEAM);

/// Cheapest set of at most w_max classes (w_max <= 3, at most 2000 classes) producing the
/// syndrome, found by enumeration. Ties go to the lexicographically smallest set. Throws
/// std::runtime_error ("not found within w_max") when no such set exists.
DecodeResult oracle_decode(const DetectorErrorModel &dem, const BitVector &syndrome, uint32_t w_max);

}  // namespace colorhook

#endif
