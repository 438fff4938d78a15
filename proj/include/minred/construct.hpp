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
#include "minred/split.hpp"

namespace minred {

enum class Algo { basic, detailed };

struct ConstructionMode {
    Algo algo = Algo::detailed;
    bool comparison_counting = true;
};

// Weights not yet given a level. A sorted pool is a cursor into the input.
class PendingPool {
public:
    explicit PendingPool(const WeightList& w);

    bool empty() const { return size() == 0; }
    size_t size() const;
    bool sorted() const { return sorted_; }

    WeightItem minimum(uint64_t& comparisons) const;
    // Smallest and, when present, second smallest.
    std::vector<WeightItem> two_smallest(uint64_t& comparisons) const;
    // Removes and returns every weight with value < threshold.
    std::vector<WeightItem> take_below(u128 threshold, uint64_t& comparisons);
    // Removes the given two smallest; used once at level 0.
    void remove(const std::vector<WeightItem>& items);

private:
    bool sorted_;
    std::vector<WeightItem> items_;
    size_t cursor_ = 0;
};

struct BuildState {
    LevelStore store;
    PendingPool pool;
    std::vector<int64_t> first_eta; // level each weight was first assigned to, by index
    u128 s0 = 0;                    // level 0 threshold
};

BuildState assign_level0(const WeightList& w);

// lv is the position of the last level that received pool weights.
int64_t compute_next_level(size_t lv, BuildState& b);

uint64_t count_nodes(size_t lv, const LevelStore& st);

// Moves the largest-rank subtrees at lv one level up; next is absent at
// termination. Returns the number of subtrees moved.
uint64_t maintain_kraft(size_t lv, std::optional<int64_t> next, BuildState& b);

// Returns the number of pool weights assigned to level eta.
uint64_t assign_weights_to_level(int64_t eta, BuildState& b);

struct Construction {
    CodeLengthProfile lengths;
    ConstructionStats stats;
    LevelState assignment;
    int64_t root = 0;
    std::vector<int64_t> first_eta;
};

Construction construct(const WeightList& w, ConstructionMode mode);

std::pair<CodeLengthProfile, ConstructionStats> construct_lengths(const WeightList& w, ConstructionMode mode);

} // namespace minred
