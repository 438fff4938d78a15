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

#include "minred/core.hpp"

#include <algorithm>
#include <set>

namespace minred {

std::string to_string(u128 v)
{
    if (v == 0)
        return "0";

    std::string s;

    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }

    std::reverse(s.begin(), s.end());
    return s;
}

WeightList::WeightList(std::vector<WeightItem> items, bool sorted)
    : items_(std::move(items))
    , sorted_(sorted)
{
    const size_t n = items_.size();

    if (n > UINT32_MAX)
        throw std::invalid_argument("too many weights");

    std::vector<uint8_t> seen(n, 0);

    for (size_t i = 0; i < n; i++) {
        const WeightItem& w = items_[i];

        if (w.value == 0)
            throw std::invalid_argument("weight " + std::to_string(w.index) + " is zero");

        if (w.value > static_cast<uint64_t>(INT64_MAX))
            throw std::invalid_argument("weight exceeds 2^63-1");

        if (w.index >= n || seen[w.index])
            throw std::invalid_argument("weight indices are not a permutation");

        seen[w.index] = 1;

        if (sorted_ && i > 0 && !key_less(items_[i - 1], w))
            throw std::invalid_argument("sequence flagged sorted is not sorted");
    }
}

WeightList WeightList::from_values(std::span<const uint64_t> values, bool sorted)
{
    std::vector<WeightItem> items(values.size());

    for (size_t i = 0; i < values.size(); i++)
        items[i] = WeightItem { values[i], static_cast<uint32_t>(i) };

    return WeightList(std::move(items), sorted);
}

std::vector<uint64_t> WeightList::values_by_index() const
{
    std::vector<uint64_t> v(items_.size());

    for (const WeightItem& w : items_)
        v[w.index] = w.value;

    return v;
}

Dyadic Dyadic::from_length_counts(const std::map<uint32_t, uint64_t>& counts)
{
    Dyadic d;

    if (counts.empty())
        return d;

    const uint32_t deepest = counts.rbegin()->first;
    std::vector<uint8_t> bits(deepest, 0);
    u128 carry = 0;

    for (uint32_t l = deepest; l >= 1; l--) {
        auto it = counts.find(l);
        u128 total = carry + (it == counts.end() ? 0 : it->second);
        bits[l - 1] = static_cast<uint8_t>(total & 1);
        carry = total >> 1;
    }

    auto z = counts.find(0);

    if (z != counts.end())
        carry += z->second;

    if (carry > UINT64_MAX)
        throw std::overflow_error("Kraft sum integer part overflow");

    d.whole_ = static_cast<uint64_t>(carry);

    while (!bits.empty() && bits.back() == 0)
        bits.pop_back();

    d.frac_ = std::move(bits);
    return d;
}

int Dyadic::compare_one() const
{
    if (whole_ == 0)
        return -1;

    if (whole_ > 1 || !frac_.empty())
        return 1;

    return 0;
}

std::string Dyadic::numerator() const
{
    // Base 1e9 limbs, least significant first.
    std::vector<uint32_t> limbs { 0 };

    auto push_bit = [&limbs](uint32_t bit) {
        uint64_t carry = bit;

        for (uint32_t& l : limbs) {
            uint64_t t = uint64_t(l) * 2 + carry;
            l = static_cast<uint32_t>(t % 1000000000u);
            carry = t / 1000000000u;
        }

        if (carry != 0)
            limbs.push_back(static_cast<uint32_t>(carry));
    };

    for (int b = 63; b >= 0; b--)
        push_bit(static_cast<uint32_t>((whole_ >> b) & 1));

    for (uint8_t b : frac_)
        push_bit(b);

    std::string s = std::to_string(limbs.back());

    for (size_t i = limbs.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs[i]);
        s += std::string(9 - part.size(), '0') + part;
    }

    return s;
}

std::string Dyadic::to_string() const
{
    if (frac_.empty())
        return std::to_string(whole_);

    if (frac_.size() < 64) {
        u128 num = (u128(whole_) << frac_.size());

        for (size_t d = 0; d < frac_.size(); d++) {
            if (frac_[d])
                num += u128(1) << (frac_.size() - 1 - d);
        }

        return minred::to_string(num) + "/" + minred::to_string(u128(1) << frac_.size());
    }

    return numerator() + "/2^" + std::to_string(frac_.size());
}

CodeLengthProfile::CodeLengthProfile(std::vector<uint32_t> lengths)
    : lengths_(std::move(lengths))
{
    std::map<uint32_t, uint64_t> counts;

    for (uint32_t l : lengths_) {
        if (l == 0)
            throw std::invalid_argument("codeword length must be positive");

        counts[l]++;
    }

    kraft_ = Dyadic::from_length_counts(counts);
}

size_t LevelState::leaf_count() const
{
    size_t n = 0;

    for (const auto& [eta, items] : levels)
        n += items.size();

    return n;
}

Dyadic kraft_sum(const CodeLengthProfile& lengths)
{
    return lengths.kraft();
}

u128 code_cost(const WeightList& weights, const CodeLengthProfile& lengths)
{
    if (weights.size() != lengths.size())
        throw std::invalid_argument("weights and lengths differ in size");

    u128 cost = 0;

    for (const WeightItem& w : weights.items())
        cost = add_checked(cost, mul_checked(w.value, lengths[w.index]));

    return cost;
}

uint32_t distinct_length_count(const CodeLengthProfile& lengths)
{
    std::set<uint32_t> s(lengths.lengths().begin(), lengths.lengths().end());
    return static_cast<uint32_t>(s.size());
}

bool is_monotone(const WeightList& weights, const CodeLengthProfile& lengths)
{
    if (weights.size() != lengths.size())
        throw std::invalid_argument("weights and lengths differ in size");

    std::vector<std::pair<uint64_t, uint32_t>> v;
    v.reserve(weights.size());

    for (const WeightItem& w : weights.items())
        v.emplace_back(w.value, lengths[w.index]);

    std::sort(v.begin(), v.end());
    uint32_t lighter_min = UINT32_MAX;
    size_t i = 0;

    while (i < v.size()) {
        size_t j = i;
        uint32_t group_min = UINT32_MAX;

        while (j < v.size() && v[j].first == v[i].first) {
            if (v[j].second > lighter_min)
                return false;

            group_min = std::min(group_min, v[j].second);
            j++;
        }

        lighter_min = std::min(lighter_min, group_min);
        i = j;
    }

    return true;
}

namespace {

struct Node {
    u128 value;
    uint32_t min_index;

    bool operator<(const Node& o) const
    {
        return value < o.value || (value == o.value && min_index < o.min_index);
    }
};

bool power_of_two(size_t m) { return m != 0 && (m & (m - 1)) == 0; }

} // namespace

ExclusionReport verify_exclusion(const WeightList& weights, const LevelState& assignment)
{
    const size_t n = weights.size();

    if (n == 0 || assignment.levels.empty())
        throw invalid_assignment("empty assignment");

    if (assignment.leaf_count() != n)
        throw invalid_assignment("assignment does not cover every weight exactly once");

    const std::vector<uint64_t> values = weights.values_by_index();
    std::vector<uint8_t> seen(n, 0);

    for (const auto& [eta, items] : assignment.levels) {
        for (const WeightItem& w : items) {
            if (w.index >= n || seen[w.index] || values[w.index] != w.value)
                throw invalid_assignment("assignment items do not match the weights");

            seen[w.index] = 1;
        }
    }

    const int64_t top = assignment.levels.rbegin()->first;
    int64_t eta = assignment.levels.begin()->first;
    std::vector<Node> carried;
    bool have_max = false;
    u128 lower_max = 0;
    ExclusionReport report;

    while (true) {
        std::vector<Node> nodes = std::move(carried);
        auto it = assignment.levels.find(eta);

        if (it != assignment.levels.end()) {
            for (const WeightItem& w : it->second)
                nodes.push_back(Node { w.value, w.index });
        }

        std::sort(nodes.begin(), nodes.end());

        if (eta < top && nodes.size() % 2 != 0)
            throw invalid_assignment("odd node count at level " + std::to_string(eta));

        if (eta == top && !power_of_two(nodes.size()))
            throw invalid_assignment("node count at top leaf level is not a power of two");

        if (report.ok && have_max && nodes.front().value < lower_max) {
            report.ok = false;
            report.violation = "level " + std::to_string(eta) + " holds value " + to_string(nodes.front().value)
                + " below lower-level value " + to_string(lower_max);
        }

        lower_max = have_max ? std::max(lower_max, nodes.back().value) : nodes.back().value;
        have_max = true;

        if (nodes.size() == 1)
            break;

        carried.clear();

        for (size_t i = 0; i + 1 < nodes.size(); i += 2)
            carried.push_back(Node { add_checked(nodes[i].value, nodes[i + 1].value),
                std::min(nodes[i].min_index, nodes[i + 1].min_index) });

        eta++;
    }

    return report;
}

} // namespace minred
