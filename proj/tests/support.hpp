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

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "minred/split.hpp"

namespace minred::test {

inline std::vector<uint64_t> random_values(std::mt19937_64& rng, size_t n, uint64_t max_value)
{
    std::vector<uint64_t> v(n);

    for (uint64_t& x : v)
        x = 1 + rng() % max_value;

    return v;
}

// Ten 2s, ten 3s, five 5s, five 9s.
inline std::vector<uint64_t> worked_example()
{
    std::vector<uint64_t> v;
    v.insert(v.end(), 10, 2);
    v.insert(v.end(), 10, 3);
    v.insert(v.end(), 5, 5);
    v.insert(v.end(), 5, 9);
    return v;
}

// A leaf store with random level gaps and leaf counts that keep every
// level's node count divisible across the gap above it.
inline LevelStore random_store(std::mt19937_64& rng, bool sorted, size_t max_leaves)
{
    static const uint64_t ranges[] = { 3, 50, 1000000000 };

    while (true) {
        const size_t levels = 1 + rng() % 4;
        std::vector<int64_t> eta(levels, 0);
        std::vector<uint64_t> count(levels, 0);

        for (size_t i = 1; i < levels; i++)
            eta[i] = eta[i - 1] + 1 + static_cast<int64_t>(rng() % 3);

        uint64_t carried = 0;
        bool ok = true;

        for (size_t i = 0; i < levels && ok; i++) {
            if (i > 0)
                carried >>= (eta[i] - eta[i - 1]);

            const uint64_t unit = i + 1 < levels ? uint64_t(1) << (eta[i + 1] - eta[i]) : 1;
            uint64_t n = (unit - (carried + 1) % unit) % unit + 1;
            n += unit * (rng() % 3);
            count[i] = n;
            carried += n;
            ok = carried % unit == 0;
        }

        const uint64_t total = std::accumulate(count.begin(), count.end(), uint64_t(0));

        if (!ok || total > max_leaves)
            continue;

        const uint64_t max_value = ranges[rng() % 3];
        std::vector<uint32_t> index(total);
        std::iota(index.begin(), index.end(), 0);

        for (size_t i = index.size(); i > 1; i--)
            std::swap(index[i - 1], index[rng() % i]);

        LevelStore st(sorted);
        size_t next = 0;

        for (size_t i = 0; i < levels; i++) {
            std::vector<WeightItem> items;

            for (uint64_t q = 0; q < count[i]; q++)
                items.push_back(WeightItem { 1 + rng() % max_value, index[next++] });

            if (sorted)
                std::sort(items.begin(), items.end(), key_less);

            st.append(eta[i], std::move(items));
        }

        return st;
    }
}

// Every node of the forest over a store, built by brute force.
class Forest {
public:
    struct Node {
        u128 value = 0;
        uint32_t min_index = UINT32_MAX;
        bool leaf = false;
        std::vector<uint32_t> leaves;  // item indices, all levels
        std::vector<size_t> below;     // ranks at the previous level position
    };

    explicit Forest(const LevelStore& st)
    {
        for (size_t i = 0; i < st.size(); i++) {
            std::vector<Node> nodes;

            if (i > 0) {
                std::vector<Node> cur = at_[i - 1];

                for (size_t r = 0; r < cur.size(); r++)
                    cur[r].below = { r };

                for (int64_t g = 0; g < st.eta(i) - st.eta(i - 1); g++) {
                    if (cur.size() % 2 != 0)
                        throw std::logic_error("odd node count below a level gap");

                    std::vector<Node> up;

                    for (size_t r = 0; r < cur.size(); r += 2) {
                        Node n;
                        n.value = cur[r].value + cur[r + 1].value;
                        n.min_index = std::min(cur[r].min_index, cur[r + 1].min_index);
                        n.leaves = cur[r].leaves;
                        n.leaves.insert(n.leaves.end(), cur[r + 1].leaves.begin(), cur[r + 1].leaves.end());
                        n.below = cur[r].below;
                        n.below.insert(n.below.end(), cur[r + 1].below.begin(), cur[r + 1].below.end());
                        up.push_back(std::move(n));
                    }

                    std::sort(up.begin(), up.end(), less);
                    cur = std::move(up);
                }

                nodes = std::move(cur);
            }

            std::vector<WeightItem> items = st.level(i).items;
            std::sort(items.begin(), items.end(), key_less);
            std::map<uint32_t, size_t> rank;

            for (size_t r = 0; r < items.size(); r++) {
                rank[items[r].index] = r;
                Node n;
                n.value = items[r].value;
                n.min_index = items[r].index;
                n.leaf = true;
                n.leaves = { items[r].index };
                nodes.push_back(std::move(n));
            }

            std::sort(nodes.begin(), nodes.end(), less);
            at_.push_back(std::move(nodes));
            leaf_rank_.push_back(std::move(rank));
        }
    }

    const std::vector<Node>& nodes(size_t lv) const { return at_[lv]; }

    std::vector<size_t> internal_ranks(size_t lv) const
    {
        std::vector<size_t> r;

        for (size_t q = 0; q < at_[lv].size(); q++) {
            if (!at_[lv][q].leaf)
                r.push_back(q);
        }

        return r;
    }

    // Leaf ranges of the given nodes at lv, on levels below `depth`.
    // Throws when the leaves of a level are not one contiguous rank range.
    LeafSlice slice(size_t lv, const std::vector<size_t>& ranks, size_t depth, size_t before_count) const
    {
        LeafSlice s;

        for (size_t i = 0; i < depth; i++) {
            std::vector<size_t> r;

            for (size_t q : ranks) {
                for (uint32_t idx : at_[lv][q].leaves) {
                    auto it = leaf_rank_[i].find(idx);

                    if (it != leaf_rank_[i].end())
                        r.push_back(it->second);
                }
            }

            std::sort(r.begin(), r.end());
            size_t lo = r.empty() ? leaves_before(lv, i, before_count) : r.front();

            for (size_t q = 0; q < r.size(); q++) {
                if (r[q] != lo + q)
                    throw std::logic_error("node leaves are not a contiguous rank range");
            }

            s.lo.push_back(lo);
            s.hi.push_back(lo + r.size());
        }

        return s;
    }

    // Level i leaves under the first `count` nodes at lv.
    size_t leaves_before(size_t lv, size_t i, size_t count) const
    {
        size_t n = 0;

        for (size_t q = 0; q < count; q++) {
            for (uint32_t idx : at_[lv][q].leaves)
                n += leaf_rank_[i].count(idx);
        }

        return n;
    }

    static bool less(const Node& a, const Node& b)
    {
        return a.value < b.value || (a.value == b.value && a.min_index < b.min_index);
    }

private:
    std::vector<std::vector<Node>> at_;
    std::vector<std::map<uint32_t, size_t>> leaf_rank_;
};

struct Expected {
    uint64_t pos;                 // 1-based within the chosen nodes
    std::vector<uint32_t> lower;  // sorted item indices
    std::vector<uint32_t> chi;
    std::vector<uint32_t> upper;
};

inline std::vector<uint32_t> sorted_indices(const std::vector<WeightItem>& v)
{
    std::vector<uint32_t> r;

    for (const WeightItem& x : v)
        r.push_back(x.index);

    std::sort(r.begin(), r.end());
    return r;
}

inline Expected partition(const Forest& f, size_t lv, const std::vector<size_t>& ranks, uint64_t pos)
{
    Expected e { pos, {}, {}, {} };

    for (size_t q = 0; q < ranks.size(); q++) {
        const auto& leaves = f.nodes(lv)[ranks[q]].leaves;
        auto& dst = q + 1 < pos ? e.lower : (q + 1 == pos ? e.chi : e.upper);
        dst.insert(dst.end(), leaves.begin(), leaves.end());
    }

    std::sort(e.lower.begin(), e.lower.end());
    std::sort(e.chi.begin(), e.chi.end());
    std::sort(e.upper.begin(), e.upper.end());
    return e;
}

// Splitting node among consecutive nodes at lv: on the lowest level the
// lower median, elsewhere the node holding leaf position floor(N/2) of the
// N leaves listed node by node.
inline uint64_t expected_split_all(const Forest& f, size_t lv, const std::vector<size_t>& ranks)
{
    if (ranks.size() == 1)
        return 1;

    if (lv == 0)
        return (ranks.size() + 1) / 2;

    uint64_t total = 0;

    for (size_t q : ranks)
        total += f.nodes(lv)[q].leaves.size();

    uint64_t seen = 0;

    for (size_t q = 0; q < ranks.size(); q++) {
        seen += f.nodes(lv)[ranks[q]].leaves.size();

        if (seen > total / 2)
            return q + 1;
    }

    throw std::logic_error("unreachable");
}

// Internal splitting node: the one that contains the splitting node of the
// previous level position's nodes beneath the chosen internal nodes.
inline uint64_t expected_split_internal(const Forest& f, size_t lv, const std::vector<size_t>& ranks)
{
    if (ranks.size() == 1)
        return 1;

    std::vector<size_t> below;

    for (size_t q : ranks) {
        const auto& b = f.nodes(lv)[q].below;
        below.insert(below.end(), b.begin(), b.end());
    }

    std::sort(below.begin(), below.end());

    for (size_t q = 1; q < below.size(); q++) {
        if (below[q] != below[q - 1] + 1)
            throw std::logic_error("internal nodes do not cover consecutive ranks");
    }

    const size_t chosen = below[expected_split_all(f, lv - 1, below) - 1];

    for (size_t q = 0; q < ranks.size(); q++) {
        const auto& b = f.nodes(lv)[ranks[q]].below;

        if (std::find(b.begin(), b.end(), chosen) != b.end())
            return q + 1;
    }

    throw std::logic_error("unreachable");
}

inline void settle_slice(LevelStore& st, const LeafSlice& s)
{
    for (size_t i = 0; i < s.depth(); i++) {
        st.ensure_boundary(i, s.lo[i]);
        st.ensure_boundary(i, s.hi[i]);
    }
}

inline std::string describe(const char* what, size_t lv, const Expected& e, uint64_t pos)
{
    return std::string(what) + " at level position " + std::to_string(lv) + ": expected rank "
        + std::to_string(e.pos) + ", got " + std::to_string(pos);
}

// Runs every split query on random node ranges of a store and compares each
// answer with the forest. Returns the first disagreement, or "".
inline std::string check_split_queries(LevelStore& st, std::mt19937_64& rng)
{
    SplitEngine eng(st);

    auto same = [&](const SplitResult& r, const Expected& e) {
        return r.pos == e.pos && sorted_indices(eng.collect(r.lower)) == e.lower
            && sorted_indices(eng.collect(r.chi)) == e.chi && sorted_indices(eng.collect(r.upper)) == e.upper;
    };

    for (size_t lv = 0; lv < st.size(); lv++) {
        const Forest f(st);
        const size_t count = f.nodes(lv).size();
        const size_t a = rng() % count;
        const size_t b = a + 1 + rng() % (count - a);
        std::vector<size_t> ranks(b - a);
        std::iota(ranks.begin(), ranks.end(), a);

        LeafSlice s = f.slice(lv, ranks, lv + 1, a);
        settle_slice(st, s);
        const Expected e = partition(f, lv, ranks, expected_split_all(f, lv, ranks));
        const SplitResult r = eng.find_splitting_all(lv, s);

        if (!same(r, e))
            return describe("find_splitting_all", lv, e, r.pos);

        const uint64_t t = 1 + rng() % ranks.size();
        const Expected small = partition(f, lv, ranks, t + 1);
        const auto [first, rest] = eng.find_t_smallest(t, lv, s);

        if (sorted_indices(eng.collect(first)) != small.lower
            || sorted_indices(eng.collect(rest)) != [&] {
                   std::vector<uint32_t> v = small.chi;
                   v.insert(v.end(), small.upper.begin(), small.upper.end());
                   std::sort(v.begin(), v.end());
                   return v;
               }())
            return "find_t_smallest at level position " + std::to_string(lv) + ", t = " + std::to_string(t);

        const Expected large = partition(f, lv, ranks, ranks.size() - t);
        const auto [keep, last] = eng.find_t_largest(t, lv, s);
        std::vector<uint32_t> expect_keep = large.lower;
        expect_keep.insert(expect_keep.end(), large.chi.begin(), large.chi.end());
        std::sort(expect_keep.begin(), expect_keep.end());

        if (sorted_indices(eng.collect(keep)) != expect_keep || sorted_indices(eng.collect(last)) != large.upper)
            return "find_t_largest at level position " + std::to_string(lv) + ", t = " + std::to_string(t);

        if (lv == 0)
            continue;

        const std::vector<size_t> inner = f.internal_ranks(lv);
        const size_t ia = rng() % inner.size();
        const size_t ib = ia + 1 + rng() % (inner.size() - ia);
        const std::vector<size_t> iranks(inner.begin() + static_cast<std::ptrdiff_t>(ia),
            inner.begin() + static_cast<std::ptrdiff_t>(ib));
        LeafSlice is = f.slice(lv, iranks, lv, iranks.front());
        settle_slice(st, is);
        const Expected ie = partition(f, lv, iranks, expected_split_internal(f, lv, iranks));
        const SplitResult ir = eng.find_splitting_internal(lv, is);

        if (!same(ir, ie))
            return describe("find_splitting_internal", lv, ie, ir.pos);
    }

    return "";
}

} // namespace minred::test
