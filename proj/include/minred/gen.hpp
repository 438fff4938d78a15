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

#include <optional>
#include <string_view>

#include "minred/core.hpp"

namespace minred {

enum class Family { example41, equal, exponential, uniform, geometric, two_cluster };

std::optional<Family> parse_family(std::string_view name);

std::string family_name(Family f);

// Weight values in input order. For example41, n is the number of level-0
// leaves (a power of two >= 4) and 3n/2 + 2 weights are produced; for the
// other families n is the number of weights. Throws std::invalid_argument
// on a bad n. Only integer arithmetic on a mt19937_64 stream is used, so
// output is identical on every platform.
std::vector<uint64_t> generate(Family f, uint64_t n, uint64_t seed);

// The same values as a sorted list; indices follow the sorted order.
WeightList sorted_list(std::vector<uint64_t> values);

} // namespace minred
