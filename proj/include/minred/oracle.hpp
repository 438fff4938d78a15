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

// Heap-based greedy merge; ties by value then creation order.
CodeLengthProfile huffman_lengths(const WeightList& w);

// Two-queue merge over a sorted list, linear time.
CodeLengthProfile huffman_sorted_lengths(const WeightList& w);

struct BruteForceResult {
    u128 cost;
    CodeLengthProfile witness;
};

constexpr size_t brute_force_limit = 12;

// Exhaustive search over complete length profiles, n <= 12.
BruteForceResult brute_force_optimal(const WeightList& w);

} // namespace minred
