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

#include "minred/construct.hpp"

#include <algorithm>
#include <bit>

namespace minred {

namespace {

uint32_t ceil_lg(uint64_t m)
{
    return m <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(m - 1));
}

uint32_t floor_lg(uint64_t m)
{
    return static_cast<uint32_t>(std::bit_width(m) - 1);
}

} // namespace

PendingPool::PendingPool(const WeightList& w)
    : sorted_(w.sorted())
    , items_(w.items())
{
}

size_t PendingPool::size() const
{
    return items_.size() - cursor_;
}

WeightItem PendingPool::minimum(uint64_t& comparisons) const
{
    if (empty())
        throw std::logic_error("minimum of an empty pool");

    if (sorted_)
        return items_[cursor_];

    WeightItem m = items_[0];

    for (size_t i = 1; i < items_.size(); i++) {
        comparisons++;

        if (key_less(items_[i], m))
            m = items_[i];
    }

    return m;
}

std::vector<WeightItem> PendingPool::two_smallest(uint64_t& comparisons) const
{
    if (empty())
        throw std::logic_error("minimum of an empty pool");

    if (sorted_) {
        std::vector<WeightItem> v { items_[cursor_] };

        if (size() > 1)
            v.push_back(items_[cursor_ + 1]);

        return v;
    }

    WeightItem a = items_[0], b {};
    bool have_b = false;

    for (size_t i = 1; i < items_.size(); i++) {
        const WeightItem& x = items_[i];
        comparisons++;

        if (!have_b) {
            if (key_less(x, a)) {
                b = a;
                a = x;
            } else {
                b = x;
            }

            have_b = true;
        } else if (key_less(x, b)) {
            comparisons++;

            if (key_less(x, a)) {
                b = a;
                a = x;
            } else {
                b = x;
            }
        }
    }

    std::vector<WeightItem> v { a };

    if (have_b)
        v.push_back(b);

    return v;
}

std::vector<WeightItem> PendingPool::take_below(u128 threshold, uint64_t& comparisons)
{
    std::vector<WeightItem> taken;

    if (!sorted_) {
        size_t keep = 0;

        for (size_t i = 0; i < items_.size(); i++) {
            comparisons++;

            if (items_[i].value < threshold)
                taken.push_back(items_[i]);
            else
                items_[keep++] = items_[i];
        }

        items_.resize(keep);
        return taken;
    }

    // Exponential probe from the cursor, then binary search.
    const size_t n = items_.size();

    if (cursor_ == n)
        return taken;

    comparisons++;

    if (items_[cursor_].value >= threshold)
        return taken;

    size_t good = cursor_, bad = n, step = 1;

    while (good + step < n) {
        comparisons++;

        if (items_[good + step].value < threshold) {
            good += step;
            step *= 2;
        } else {
            bad = good + step;
            break;
        }
    }

    while (bad - good > 1) {
        const size_t mid = good + (bad - good) / 2;
        comparisons++;

        if (items_[mid].value < threshold)
            good = mid;
        else
            bad = mid;
    }

    taken.assign(items_.begin() + static_cast<std::ptrdiff_t>(cursor_),
        items_.begin() + static_cast<std::ptrdiff_t>(bad));
    cursor_ = bad;
    return taken;
}

void PendingPool::remove(const std::vector<WeightItem>& items)
{
    if (sorted_) {
        cursor_ += items.size();
        return;
    }

    std::erase_if(items_, [&items](const WeightItem& w) {
        return std::any_of(items.begin(), items.end(), [&w](const WeightItem& x) { return x.index == w.index; });
    });
}

BuildState assign_level0(const WeightList& w)
{
    if (w.size() < 2)
        throw std::invalid_argument("level 0 needs at least two weights");

    BuildState b { LevelStore(w.sorted()), PendingPool(w), std::vector<int64_t>(w.size(), -1), 0 };
    uint64_t& cmp = b.store.comparisons();
    std::vector<WeightItem> level0 = b.pool.two_smallest(cmp);
    b.pool.remove(level0);
    b.s0 = u128(level0[0].value) + level0[1].value;
    std::vector<WeightItem> rest = b.pool.take_below(b.s0, cmp);
    level0.insert(level0.end(), rest.begin(), rest.end());

    for (const WeightItem& x : level0)
        b.first_eta[x.index] = 0;

    b.store.append(0, std::move(level0));
    return b;
}

int64_t compute_next_level(size_t lv, BuildState& b)
{
    SplitEngine eng(b.store);
    uint64_t& cmp = b.store.comparisons();
    u128 budget = b.pool.minimum(cmp).value;
    LeafSlice l = LeafSlice::whole(b.store, lv);
    uint64_t gamma = 0;

    while (!l.empty()) {
        SplitResult r = eng.find_splitting_all(lv, l);
        const u128 sum = eng.add_weights(r.lower) + eng.add_weights(r.chi);
        cmp++;

        if (sum < budget) {
            budget -= sum;
            gamma += r.pos;
            l = r.upper;
        } else {
            l = r.lower;
        }
    }

    if (gamma == 0)
        throw std::logic_error("no node at the current level is below the pool minimum");

    // A tie between the pool minimum and the two smallest nodes leaves gamma at 1.
    return b.store.eta(lv) + std::max<uint32_t>(1, floor_lg(gamma));
}

uint64_t count_nodes(size_t lv, const LevelStore& st)
{
    return st.count_nodes(lv);
}

uint64_t maintain_kraft(size_t lv, std::optional<int64_t> next, BuildState& b)
{
    const uint64_t m = count_nodes(lv, b.store);
    uint64_t nu;

    if (next) {
        const int64_t gap = *next - b.store.eta(lv);

        if (gap < 1 || gap > 62)
            throw std::logic_error("next level out of range");

        const uint64_t lambda = uint64_t(1) << gap;
        nu = lambda * ((m + lambda - 1) / lambda) - m;
    } else {
        nu = (uint64_t(1) << ceil_lg(m)) - m;
    }

    if (nu == 0)
        return 0;

    SplitEngine eng(b.store);
    auto [rest, largest] = eng.find_t_largest(nu, lv, LeafSlice::whole(b.store, lv));
    b.store.move_up(largest.lo);
    return nu;
}

uint64_t assign_weights_to_level(int64_t eta, BuildState& b)
{
    const size_t lv = b.store.ensure_level(eta);
    SplitEngine eng(b.store);
    uint64_t& cmp = b.store.comparisons();
    const uint64_t cnt = count_nodes(lv, b.store);
    std::vector<u128> nodes;

    if (cnt >= 1) {
        auto [first, rest] = eng.find_t_smallest(1, lv, LeafSlice::whole(b.store, lv));
        nodes.push_back(eng.add_weights(first));

        if (cnt >= 2)
            nodes.push_back(eng.add_weights(eng.find_t_smallest(1, lv, rest).first));
    }

    std::vector<u128> weights;

    for (const WeightItem& x : b.pool.two_smallest(cmp))
        weights.push_back(x.value);

    // Two smallest of the (up to) four candidates.
    u128 s = 0;
    size_t i = 0, k = 0;

    for (int pick = 0; pick < 2; pick++) {
        if (i < nodes.size() && k < weights.size()) {
            cmp++;

            if (nodes[i] <= weights[k])
                s += nodes[i++];
            else
                s += weights[k++];
        } else if (i < nodes.size()) {
            s += nodes[i++];
        } else if (k < weights.size()) {
            s += weights[k++];
        } else {
            throw std::logic_error("fewer than two candidate nodes");
        }
    }

    std::vector<WeightItem> taken = b.pool.take_below(s, cmp);

    for (const WeightItem& x : taken)
        b.first_eta[x.index] = eta;

    const uint64_t got = taken.size();
    b.store.append(eta, std::move(taken));
    return got;
}

Construction construct(const WeightList& w, ConstructionMode mode)
{
    const size_t n = w.size();

    if (n == 0)
        throw std::invalid_argument("no weights");

    Construction c;

    if (n == 1) {
        c.lengths = CodeLengthProfile({ 1 });
        c.stats.iterations = 1;
        c.stats.k = 1;
        c.stats.trace.push_back(TraceEntry { 0, 1, 0 });
        c.assignment.levels[0] = w.items();
        c.root = 1;
        c.first_eta = { 0 };
        return c;
    }

    BuildState b = assign_level0(w);
    int64_t top = 0;
    c.stats.iterations = 1;
    c.stats.trace.push_back(TraceEntry { 0, b.store.leaves(0), 0 });

    while (!b.pool.empty()) {
        const size_t lv = *b.store.find(top);
        int64_t next;

        if (mode.algo == Algo::detailed)
            next = compute_next_level(lv, b);
        else
            next = top + 1;

        const uint64_t nu = maintain_kraft(lv, next, b);

        // A leafless top level would add a pass-through level to every query.
        if (b.store.size() > 1 && b.store.leaves(b.store.size() - 1) == 0)
            b.store.relabel_top(next);

        const uint64_t got = assign_weights_to_level(next, b);

        if (got != 0)
            c.stats.iterations++;

        c.stats.trace.push_back(TraceEntry { next, got, nu });
        top = next;
    }

    const size_t lv = *b.store.find(top);
    const uint64_t m = count_nodes(lv, b.store);
    maintain_kraft(lv, std::nullopt, b);
    c.root = top + ceil_lg(m);
    c.assignment = b.store.snapshot();

    std::vector<uint32_t> lengths(n, 0);

    for (const auto& [eta, items] : c.assignment.levels) {
        for (const WeightItem& x : items)
            lengths[x.index] = static_cast<uint32_t>(c.root - eta);
    }

    c.lengths = CodeLengthProfile(std::move(lengths));
    c.stats.weight_comparisons = mode.comparison_counting ? b.store.comparisons() : 0;
    c.stats.k = distinct_length_count(c.lengths);
    c.first_eta = std::move(b.first_eta);
    return c;
}

std::pair<CodeLengthProfile, ConstructionStats> construct_lengths(const WeightList& w, ConstructionMode mode)
{
    Construction c = construct(w, mode);
    return { std::move(c.lengths), std::move(c.stats) };
}

} // namespace minred
