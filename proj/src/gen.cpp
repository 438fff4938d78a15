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

#include "minred/gen.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "minred/construct.hpp"

namespace minred {

namespace {

constexpr uint64_t max_weights = uint64_t(1) << 32;

void shuffle(std::vector<uint64_t>& v, std::mt19937_64& rng)
{
    for (size_t i = v.size(); i > 1; i--)
        std::swap(v[i - 1], v[rng() % i]);
}

// n leaves in [1000, 1100) settle at level 0, n/2 leaves in [2200, 3900)
// at level 1, and the two heavy weights just above the larger of the two
// internal nodes at level lg n land there.
std::vector<uint64_t> example41(uint64_t n, std::mt19937_64& rng)
{
    if (n < 4 || !std::has_single_bit(n) || n > (uint64_t(1) << 30))
        throw std::invalid_argument("example41 needs n a power of two in [4, 2^30]");

    std::vector<uint64_t> a(n), b(n / 2);

    for (uint64_t& x : a)
        x = 1000 + rng() % 100;

    for (uint64_t& x : b)
        x = 2200 + rng() % 1700;

    std::vector<uint64_t> sa(a);
    std::sort(sa.begin(), sa.end());
    std::vector<uint64_t> level1(b);

    for (uint64_t i = 0; i < n; i += 2)
        level1.push_back(sa[i] + sa[i + 1]);

    std::sort(level1.begin(), level1.end());
    uint64_t y2 = 0;

    for (uint64_t i = n / 2; i < n; i++)
        y2 += level1[i];

    std::vector<uint64_t> w(a);
    w.insert(w.end(), b.begin(), b.end());
    w.push_back(y2 + 1);
    w.push_back(y2 + 2);
    shuffle(w, rng);

    const Construction c = construct(WeightList::from_values(w), ConstructionMode {});

    if (c.stats.k != 3)
        throw std::logic_error("example41 instance does not realize k = 3");

    return w;
}

} // namespace

std::optional<Family> parse_family(std::string_view name)
{
    if (name == "example41")
        return Family::example41;
    if (name == "equal")
        return Family::equal;
    if (name == "exponential")
        return Family::exponential;
    if (name == "uniform")
        return Family::uniform;
    if (name == "geometric")
        return Family::geometric;
    if (name == "two-cluster")
        return Family::two_cluster;

    return std::nullopt;
}

std::string family_name(Family f)
{
    switch (f) {
    case Family::example41:
        return "example41";
    case Family::equal:
        return "equal";
    case Family::exponential:
        return "exponential";
    case Family::uniform:
        return "uniform";
    case Family::geometric:
        return "geometric";
    case Family::two_cluster:
        return "two-cluster";
    }

    return "unknown";
}

std::vector<uint64_t> generate(Family f, uint64_t n, uint64_t seed)
{
    std::mt19937_64 rng(seed);

    if (f == Family::example41)
        return example41(n, rng);

    if (n == 0 || n > max_weights)
        throw std::invalid_argument("n must be in [1, 2^32]");

    std::vector<uint64_t> w(n);

    switch (f) {
    case Family::equal:
        std::fill(w.begin(), w.end(), 1);
        break;
    case Family::exponential:
        if (n > 63)
            throw std::invalid_argument("exponential needs n <= 63");

        for (uint64_t i = 0; i < n; i++)
            w[i] = uint64_t(1) << i;

        break;
    case Family::uniform:
        for (uint64_t& x : w)
            x = 1 + rng() % 1000000000;

        break;
    case Family::geometric:
        // Trials up to the first success, success probability 1/16.
        for (uint64_t& x : w) {
            x = 1;

            while (rng() % 16 != 0)
                x++;
        }

        break;
    case Family::two_cluster:
        for (uint64_t& x : w)
            x = (rng() & 1) ? 1000000 + rng() % 10000 : 1000 + rng() % 100;

        break;
    case Family::example41:
        break;
    }

    return w;
}

WeightList sorted_list(std::vector<uint64_t> values)
{
    std::sort(values.begin(), values.end());
    return WeightList::from_values(values, true);
}

} // namespace minred
