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

#include "minred/oracle.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace minred {

namespace {

// Leaf depths from parent links; nodes 0..n-1 are the leaves.
std::vector<uint32_t> depths(const std::vector<size_t>& parent, size_t n)
{
    std::vector<uint32_t> d(parent.size(), 0);

    for (size_t i = parent.size() - 1; i-- > 0;)
        d[i] = d[parent[i]] + 1;

    return std::vector<uint32_t>(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n));
}

} // namespace

CodeLengthProfile huffman_lengths(const WeightList& w)
{
    const size_t n = w.size();

    if (n == 0)
        throw std::invalid_argument("no weights");

    if (n == 1)
        return CodeLengthProfile({ 1 });

    using Entry = std::tuple<u128, size_t>; // value, node id (creation order)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    std::vector<size_t> parent(2 * n - 1, 0);

    for (const WeightItem& x : w.items())
        heap.emplace(x.value, x.index);

    size_t next = n;

    while (heap.size() > 1) {
        auto [va, a] = heap.top();
        heap.pop();
        auto [vb, b] = heap.top();
        heap.pop();
        parent[a] = parent[b] = next;
        heap.emplace(add_checked(va, vb), next++);
    }

    return CodeLengthProfile(depths(parent, n));
}

CodeLengthProfile huffman_sorted_lengths(const WeightList& w)
{
    const size_t n = w.size();

    if (n == 0)
        throw std::invalid_argument("no weights");

    if (!w.sorted())
        throw std::invalid_argument("two-queue construction needs a sorted list");

    if (n == 1)
        return CodeLengthProfile({ 1 });

    // Nodes 0..n-1 are leaves in sorted position; parents are filled in order.
    std::vector<u128> value(2 * n - 1);
    std::vector<size_t> parent(2 * n - 1, 0);

    for (size_t i = 0; i < n; i++)
        value[i] = w[i].value;

    size_t leaf = 0, inner = n, next = n;

    auto pop = [&]() {
        if (leaf < n && (inner == next || value[leaf] <= value[inner]))
            return leaf++;

        return inner++;
    };

    while (next < 2 * n - 1) {
        const size_t a = pop();
        const size_t b = pop();
        value[next] = add_checked(value[a], value[b]);
        parent[a] = parent[b] = next++;
    }

    std::vector<uint32_t> by_pos = depths(parent, n);
    std::vector<uint32_t> lengths(n);

    for (size_t i = 0; i < n; i++)
        lengths[w[i].index] = by_pos[i];

    return CodeLengthProfile(std::move(lengths));
}

namespace {

struct Search {
    std::vector<uint64_t> desc; // weights, heaviest first
    std::vector<uint32_t> counts;
    u128 best = ~u128(0);
    std::vector<uint32_t> best_counts;

    void visit(uint32_t depth, uint64_t slots, size_t placed)
    {
        const size_t n = desc.size();

        for (uint64_t leaves = 0; leaves <= slots && placed + leaves <= n; leaves++) {
            const uint64_t inner = slots - leaves;
            const size_t left = n - placed - leaves;

            if (2 * inner > left || (inner == 0) != (left == 0))
                continue;

            counts.push_back(static_cast<uint32_t>(leaves));

            if (inner == 0) {
                score();
            } else {
                visit(depth + 1, 2 * inner, placed + leaves);
            }

            counts.pop_back();
        }
    }

    void score()
    {
        u128 cost = 0;
        size_t k = 0;

        for (size_t d = 0; d < counts.size(); d++) {
            for (uint32_t c = 0; c < counts[d]; c++)
                cost += u128(desc[k++]) * (d + 1);
        }

        if (cost < best) {
            best = cost;
            best_counts = counts;
        }
    }
};

} // namespace

BruteForceResult brute_force_optimal(const WeightList& w)
{
    const size_t n = w.size();

    if (n == 0)
        throw std::invalid_argument("no weights");

    if (n > brute_force_limit)
        throw std::invalid_argument("brute force is limited to 12 weights");

    if (n == 1)
        return BruteForceResult { w[0].value, CodeLengthProfile({ 1 }) };

    std::vector<WeightItem> order = w.items();
    std::sort(order.begin(), order.end(), [](const WeightItem& a, const WeightItem& b) { return key_less(b, a); });

    Search s;

    for (const WeightItem& x : order)
        s.desc.push_back(x.value);

    s.visit(1, 2, 0);

    std::vector<uint32_t> lengths(n);
    size_t k = 0;

    for (size_t d = 0; d < s.best_counts.size(); d++) {
        for (uint32_t c = 0; c < s.best_counts[d]; c++)
            lengths[order[k++].index] = static_cast<uint32_t>(d + 1);
    }

    return BruteForceResult { s.best, CodeLengthProfile(std::move(lengths)) };
}

} // namespace minred
