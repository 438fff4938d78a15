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

#include "minred/select.hpp"

#include <algorithm>
#include <utility>

namespace minred {

namespace {

class Less {
public:
    explicit Less(uint64_t* counter)
        : counter_(counter)
    {
    }

    bool operator()(const WeightItem& a, const WeightItem& b) const
    {
        if (counter_ != nullptr)
            (*counter_)++;

        return key_less(a, b);
    }

private:
    uint64_t* counter_;
};

void insertion_sort(std::span<WeightItem> v, const Less& lt)
{
    for (size_t i = 1; i < v.size(); i++) {
        WeightItem x = v[i];
        size_t j = i;

        while (j > 0 && lt(x, v[j - 1])) {
            v[j] = v[j - 1];
            j--;
        }

        v[j] = x;
    }
}

// Median of five in six comparisons; returns its offset.
size_t median5(const WeightItem* e, const Less& lt)
{
    size_t i0 = 0, i1 = 1, i2 = 2, i3 = 3;

    if (lt(e[i1], e[i0]))
        std::swap(i0, i1);

    if (lt(e[i3], e[i2]))
        std::swap(i2, i3);

    if (lt(e[i2], e[i0])) {
        std::swap(i0, i2);
        std::swap(i1, i3);
    }

    // i0 is below three others, drop it.
    size_t a = 4, b = i1;

    if (lt(e[b], e[a]))
        std::swap(a, b);

    if (lt(e[i2], e[a])) {
        std::swap(a, i2);
        std::swap(b, i3);
    }

    return lt(e[b], e[i2]) ? b : i2;
}

void mom_select(std::span<WeightItem> v, size_t k, const Less& lt)
{
    while (true) {
        const size_t n = v.size();

        if (n <= 10) {
            insertion_sort(v, lt);
            return;
        }

        const size_t groups = n / 5;

        for (size_t g = 0; g < groups; g++) {
            size_t m = 5 * g + median5(&v[5 * g], lt);
            std::swap(v[g], v[m]);
        }

        mom_select(v.first(groups), groups / 2, lt);
        std::swap(v[groups / 2], v[n - 1]);
        const WeightItem pivot = v[n - 1];
        size_t store = 0;

        for (size_t i = 0; i + 1 < n; i++) {
            if (lt(v[i], pivot))
                std::swap(v[i], v[store++]);
        }

        std::swap(v[store], v[n - 1]);

        if (k == store)
            return;

        if (k < store) {
            v = v.first(store);
        } else {
            v = v.subspan(store + 1);
            k -= store + 1;
        }
    }
}

} // namespace

void select_in_place(std::span<WeightItem> v, size_t k, uint64_t* comparisons)
{
    if (k >= v.size())
        throw std::out_of_range("select rank out of range");

    mom_select(v, k, Less(comparisons));
}

Selection select_rank(std::span<const WeightItem> list, size_t t, uint64_t* comparisons, bool sorted)
{
    if (t < 1 || t > list.size())
        throw std::out_of_range("select rank out of range");

    std::vector<WeightItem> v(list.begin(), list.end());

    if (!sorted)
        select_in_place(v, t - 1, comparisons);

    Selection s { v[t - 1], {}, {} };
    s.smaller.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(t - 1));
    s.larger.assign(v.begin() + static_cast<std::ptrdiff_t>(t), v.end());
    return s;
}

Selection find_median(std::span<const WeightItem> list, uint64_t* comparisons, bool sorted)
{
    if (list.empty())
        throw std::invalid_argument("median of an empty list");

    return select_rank(list, (list.size() + 1) / 2, comparisons, sorted);
}

void RankedGroup::push(std::vector<WeightItem> block)
{
    if (block.empty())
        throw std::invalid_argument("a node has at least one leaf");

    total_multiplicity += block.size();
    blocks.push_back(std::move(block));
}

WeightedPick weighted_median(const RankedGroup& group, uint64_t target)
{
    if (group.blocks.empty())
        throw std::invalid_argument("weighted median of an empty group");

    if (target > group.total_multiplicity)
        throw std::out_of_range("weighted median target out of range");

    std::vector<uint64_t> prefix(group.blocks.size() + 1, 0);

    for (size_t i = 0; i < group.blocks.size(); i++)
        prefix[i + 1] = prefix[i] + group.blocks[i].size();

    // Last block start not above target; ties go to the smaller rank.
    auto it = std::upper_bound(prefix.begin(), prefix.end() - 1, target);
    size_t pos = static_cast<size_t>(it - prefix.begin()) - 1;
    return WeightedPick { pos, prefix[pos], group.total_multiplicity - prefix[pos + 1] };
}

} // namespace minred
