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

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minred {

using u128 = unsigned __int128;

class invalid_assignment : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

std::string to_string(u128 v);

inline u128 add_checked(u128 a, u128 b)
{
    u128 r = a + b;

    if (r < a)
        throw std::overflow_error("128-bit accumulator overflow");

    return r;
}

inline u128 mul_checked(u128 a, u128 b)
{
    if (a != 0 && b > ~u128(0) / a)
        throw std::overflow_error("128-bit accumulator overflow");

    return a * b;
}

struct WeightItem {
    uint64_t value;
    uint32_t index;
};

// Strict total order used everywhere a rank is needed.
inline bool key_less(const WeightItem& a, const WeightItem& b)
{
    return a.value < b.value || (a.value == b.value && a.index < b.index);
}

class WeightList {
public:
    WeightList() = default;

    // Validates: values >= 1, indices a permutation of 0..n-1, and when
    // sorted is set the items are increasing by (value, index).
    WeightList(std::vector<WeightItem> items, bool sorted);

    static WeightList from_values(std::span<const uint64_t> values, bool sorted = false);

    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    bool sorted() const { return sorted_; }
    const std::vector<WeightItem>& items() const { return items_; }
    const WeightItem& operator[](size_t i) const { return items_[i]; }

    // Values in original index order.
    std::vector<uint64_t> values_by_index() const;

private:
    std::vector<WeightItem> items_;
    bool sorted_ = false;
};

// Exact non-negative dyadic rational: integer part plus binary fraction.
class Dyadic {
public:
    Dyadic() = default;

    static Dyadic from_length_counts(const std::map<uint32_t, uint64_t>& counts);

    // -1, 0 or 1 against the integer 1.
    int compare_one() const;
    bool is_one() const { return compare_one() == 0; }

    // Reduced fraction "p/q" or an integer.
    std::string to_string() const;

    std::string numerator() const;
    // Denominator is 2^denominator_exponent().
    uint32_t denominator_exponent() const { return static_cast<uint32_t>(frac_.size()); }

    bool operator==(const Dyadic& o) const { return whole_ == o.whole_ && frac_ == o.frac_; }

private:
    uint64_t whole_ = 0;
    std::vector<uint8_t> frac_; // frac_[d-1] is the 2^-d bit, no trailing zeros
};

class CodeLengthProfile {
public:
    CodeLengthProfile() = default;
    explicit CodeLengthProfile(std::vector<uint32_t> lengths);

    const std::vector<uint32_t>& lengths() const { return lengths_; }
    size_t size() const { return lengths_.size(); }
    uint32_t operator[](size_t i) const { return lengths_[i]; }

    const Dyadic& kraft() const { return kraft_; }
    bool kraft_equality() const { return kraft_.is_one(); }

private:
    std::vector<uint32_t> lengths_;
    Dyadic kraft_;
};

// Final or partial leaf placement, keyed by bottom-up level number.
struct LevelState {
    std::map<int64_t, std::vector<WeightItem>> levels;

    size_t leaf_count() const;
};

struct TraceEntry {
    int64_t eta;      // level that received pool weights
    uint64_t assigned;
    uint64_t moved;   // subtrees moved up from the level below before assignment
};

struct ConstructionStats {
    uint64_t iterations = 0;
    uint64_t weight_comparisons = 0;
    uint32_t k = 0;
    std::vector<TraceEntry> trace;
};

struct ExclusionReport {
    bool ok = true;
    std::string violation;
};

Dyadic kraft_sum(const CodeLengthProfile& lengths);

u128 code_cost(const WeightList& weights, const CodeLengthProfile& lengths);

ExclusionReport verify_exclusion(const WeightList& weights, const LevelState& assignment);

uint32_t distinct_length_count(const CodeLengthProfile& lengths);

// Non-increasing lengths along non-decreasing weights.
bool is_monotone(const WeightList& weights, const CodeLengthProfile& lengths);

} // namespace minred
