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

#include <optional>
#include <utility>

namespace minred {

// Leaves of the partially built tree, one array per leaf-bearing level in
// ascending level order. Within an array the leaves sit in strict rank order
// at every established boundary; a sorted store keeps every position settled.
// No internal node is stored.
class LevelStore {
public:
    struct Level {
        int64_t eta;
        std::vector<WeightItem> items;
        std::vector<u128> prefix;   // prefix[p] = sum of items[0..p), valid at boundaries
        std::vector<uint8_t> bound; // bound[p]: items[0..p) precede items[p..)
    };

    explicit LevelStore(bool sorted);

    bool sorted() const { return sorted_; }
    size_t size() const { return levels_.size(); }
    const Level& level(size_t i) const { return levels_[i]; }
    int64_t eta(size_t i) const { return levels_[i].eta; }
    size_t leaves(size_t i) const { return levels_[i].items.size(); }
    std::optional<size_t> find(int64_t eta) const;

    // Adds leaves to level eta, creating it if needed; returns its position.
    // A sorted store expects the new leaves to follow the existing ones.
    size_t append(int64_t eta, std::vector<WeightItem> items);

    // Empty level eta if missing; returns its position.
    size_t ensure_level(int64_t eta);

    // Moves a leafless top level to eta (above its current level).
    void relabel_top(int64_t eta);

    // Leaves at positions [x[i], end) of level i move one level up, for
    // every i < x.size().
    void move_up(const std::vector<size_t>& x);

    // Makes rank p of level i final (boundaries p and p+1).
    void settle(size_t i, size_t p);
    // Makes p a boundary of level i.
    void ensure_boundary(size_t i, size_t p);
    bool is_boundary(size_t i, size_t p) const { return levels_[i].bound[p] != 0; }

    const WeightItem& at(size_t i, size_t p) const { return levels_[i].items[p]; }
    u128 range_sum(size_t i, size_t a, size_t b) const;
    uint32_t range_min_index(size_t i, size_t a, size_t b) const;

    // Nodes at level i of a full binary forest built on levels 0..i.
    uint64_t count_nodes(size_t i) const;

    uint64_t& comparisons() { return comparisons_; }
    uint64_t comparisons() const { return comparisons_; }

    LevelState snapshot() const;

private:
    void rebuild_prefix(Level& l, size_t from, size_t to);
    Level make_level(int64_t eta, std::vector<WeightItem> items, bool ordered) const;

    bool sorted_;
    std::vector<Level> levels_;
    uint64_t comparisons_ = 0;
};

// Consecutive-rank nodes at level position lv, given as one leaf-rank range
// [lo[i], hi[i]) per level position i <= lv.
struct LeafSlice {
    std::vector<size_t> lo, hi;

    size_t depth() const { return lo.size(); }
    uint64_t leaf_count() const;
    bool empty() const { return leaf_count() == 0; }
    static LeafSlice whole(const LevelStore& st, size_t lv);
    LeafSlice range(const std::vector<size_t>& a, const std::vector<size_t>& b) const;
};

struct SplitResult {
    uint64_t pos;      // 1-based rank of the chosen node within the slice
    LeafSlice lower;   // leaves of the smaller-rank nodes
    LeafSlice chi;     // leaves of the chosen node
    LeafSlice upper;   // leaves of the larger-rank nodes
};

class SplitEngine {
public:
    explicit SplitEngine(LevelStore& st)
        : st_(st)
    {
    }

    // Leaves at level position lv, and those strictly below it.
    std::pair<LeafSlice, LeafSlice> cut(size_t lv, const LeafSlice& s) const;

    u128 add_weights(const LeafSlice& s) const;
    std::vector<WeightItem> collect(const LeafSlice& s) const;

    // Nodes at level position lv spanned by s.
    uint64_t node_count(size_t lv, const LeafSlice& s) const;
    // Internal nodes at level position lv whose leaves are s (depth lv).
    uint64_t internal_count(size_t lv, const LeafSlice& s) const;

    SplitResult find_splitting_all(size_t lv, const LeafSlice& s);
    // s holds leaves strictly below lv (depth lv).
    SplitResult find_splitting_internal(size_t lv, const LeafSlice& s);

    // (t smallest-rank nodes, remainder)
    std::pair<LeafSlice, LeafSlice> find_t_smallest(uint64_t t, size_t lv, const LeafSlice& s);
    // (remainder, t largest-rank nodes)
    std::pair<LeafSlice, LeafSlice> find_t_largest(uint64_t t, size_t lv, const LeafSlice& s);

    // Node of 1-based rank t among the nodes at lv spanned by s.
    SplitResult find_rank(uint64_t t, size_t lv, const LeafSlice& s);

private:
    struct Cut {
        uint64_t pos;
        std::vector<size_t> x, y;
    };

    Cut prune(size_t lv, const LeafSlice& s, bool by_nodes, uint64_t s1);
    Cut internal(size_t lv, const LeafSlice& s);
    uint64_t shift_down(uint64_t c, size_t i) const;
    uint64_t measure(size_t lv, const std::vector<size_t>& a, const std::vector<size_t>& b, bool by_nodes) const;
    SplitResult expand(const LeafSlice& s, const Cut& c) const;

    LevelStore& st_;
};

} // namespace minred
