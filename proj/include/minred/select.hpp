/*
Copyright 2026 The minred Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include "minred/core.hpp"

namespace minred {

// Reorders v so that v[k] is the element of 0-based rank k in the strict
// order, everything before it smaller and everything after it larger.
// Median of medians; each value comparison increments *comparisons.
void select_in_place(std::span<WeightItem> v, size_t k, uint64_t* comparisons);

struct Selection {
    WeightItem element;
    std::vector<WeightItem> smaller; // rank order only when the input was sorted
    std::vector<WeightItem> larger;
};

// t is 1-based. With sorted set the input is taken as already in strict
// order and no comparisons are made.
Selection select_rank(std::span<const WeightItem> list, size_t t, uint64_t* comparisons = nullptr,
    bool sorted = false);

// Lower median, rank floor((n+1)/2).
Selection find_median(std::span<const WeightItem> list, uint64_t* comparisons = nullptr,
    bool sorted = false);

struct RankedGroup {
    std::vector<std::vector<WeightItem>> blocks; // one node per block, rank order
    uint64_t total_multiplicity = 0;

    void push(std::vector<WeightItem> block);
};

struct WeightedPick {
    size_t position;    // 0-based block index
    uint64_t preceding; // multiplicity of the blocks before it
    uint64_t following; // multiplicity of the blocks after it
};

// The block whose preceding multiplicity is the largest one not above target.
WeightedPick weighted_median(const RankedGroup& group, uint64_t target);

} // namespace minred
