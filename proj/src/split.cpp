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

#include "minred/split.hpp"
#include "minred/select.hpp"

#include <algorithm>

namespace minred {

LevelStore::LevelStore(bool sorted)
    : sorted_(sorted)
{
}

std::optional<size_t> LevelStore::find(int64_t eta) const
{
    auto it = std::lower_bound(levels_.begin(), levels_.end(), eta,
        [](const Level& l, int64_t e) { return l.eta < e; });

    if (it == levels_.end() || it->eta != eta)
        return std::nullopt;

    return static_cast<size_t>(it - levels_.begin());
}

void LevelStore::rebuild_prefix(Level& l, size_t from, size_t to)
{
    l.prefix.resize(l.items.size() + 1);

    if (from == 0)
        l.prefix[0] = 0;

    for (size_t q = std::max<size_t>(from, 1); q <= to; q++)
        l.prefix[q] = add_checked(l.prefix[q - 1], l.items[q - 1].value);
}

LevelStore::Level LevelStore::make_level(int64_t eta, std::vector<WeightItem> items, bool ordered) const
{
    Level l { eta, std::move(items), {}, {} };
    const size_t n = l.items.size();
    l.bound.assign(n + 1, (sorted_ || ordered) ? 1 : 0);
    l.bound[0] = l.bound[n] = 1;
    return l;
}

size_t LevelStore::ensure_level(int64_t eta)
{
    if (auto i = find(eta))
        return *i;

    auto it = std::lower_bound(levels_.begin(), levels_.end(), eta,
        [](const Level& l, int64_t e) { return l.eta < e; });
    Level l = make_level(eta, {}, false);
    rebuild_prefix(l, 0, 0);
    it = levels_.insert(it, std::move(l));
    return static_cast<size_t>(it - levels_.begin());
}

void LevelStore::relabel_top(int64_t eta)
{
    if (levels_.empty() || !levels_.back().items.empty() || levels_.back().eta >= eta)
        throw std::logic_error("only a leafless top level can be relabeled upward");

    levels_.back().eta = eta;
}

size_t LevelStore::append(int64_t eta, std::vector<WeightItem> items)
{
    const size_t i = ensure_level(eta);
    Level& l = levels_[i];

    if (sorted_ && !l.items.empty() && !items.empty() && !key_less(l.items.back(), items.front()))
        throw std::logic_error("sorted store received leaves out of order");

    const size_t old = l.items.size();
    l.items.insert(l.items.end(), items.begin(), items.end());

    l.bound.assign(l.items.size() + 1, sorted_ ? 1 : 0);
    l.bound.front() = l.bound.back() = 1;
    rebuild_prefix(l, old, l.items.size());
    return i;
}

void LevelStore::move_up(const std::vector<size_t>& x)
{
    std::vector<Level> out;
    out.reserve(levels_.size() + x.size());
    std::vector<WeightItem> carry;
    std::vector<uint8_t> carry_bound;
    int64_t carry_eta = 0;
    bool has_carry = false;

    auto emit_carry = [&]() {
        Level l { carry_eta, std::move(carry), {}, std::move(carry_bound) };
        rebuild_prefix(l, 0, l.items.size());
        out.push_back(std::move(l));
        carry.clear();
        carry_bound.clear();
        has_carry = false;
    };

    for (size_t i = 0; i < levels_.size(); i++) {
        Level& l = levels_[i];
        const size_t n = l.items.size();
        const size_t cut = i < x.size() ? x[i] : n;

        if (cut > n || !l.bound[cut])
            throw std::logic_error("move boundary is not established");

        if (has_carry && carry_eta < l.eta)
            emit_carry();

        std::vector<WeightItem> moved(l.items.begin() + static_cast<std::ptrdiff_t>(cut), l.items.end());
        std::vector<uint8_t> moved_bound(l.bound.begin() + static_cast<std::ptrdiff_t>(cut), l.bound.end());
        l.items.resize(cut);
        l.bound.resize(cut + 1);

        if (has_carry) {
            // Moved leaves join the existing ones in front.
            std::vector<WeightItem> merged = std::move(carry);
            merged.insert(merged.end(), l.items.begin(), l.items.end());
            Level m = make_level(l.eta, std::move(merged), false);
            rebuild_prefix(m, 0, m.items.size());
            out.push_back(std::move(m));
            carry.clear();
            carry_bound.clear();
            has_carry = false;
        } else {
            rebuild_prefix(l, 0, l.items.size());
            out.push_back(std::move(l));
        }

        if (!moved.empty()) {
            carry = std::move(moved);
            carry_bound = std::move(moved_bound);
            carry_eta = levels_[i].eta + 1;
            has_carry = true;
        }
    }

    if (has_carry)
        emit_carry();

    levels_ = std::move(out);
}

void LevelStore::settle(size_t i, size_t p)
{
    Level& l = levels_[i];

    if (p >= l.items.size())
        throw std::out_of_range("settle position out of range");

    if (l.bound[p] && l.bound[p + 1])
        return;

    size_t s = p;

    while (!l.bound[s])
        s--;

    size_t e = p + 1;

    while (!l.bound[e])
        e++;

    std::span<WeightItem> seg(l.items.data() + s, e - s);
    select_in_place(seg, p - s, &comparisons_);
    l.bound[p] = l.bound[p + 1] = 1;
    rebuild_prefix(l, s + 1, e);
}

void LevelStore::ensure_boundary(size_t i, size_t p)
{
    if (!levels_[i].bound[p])
        settle(i, p);
}

u128 LevelStore::range_sum(size_t i, size_t a, size_t b) const
{
    const Level& l = levels_[i];
    return l.prefix[b] - l.prefix[a];
}

uint32_t LevelStore::range_min_index(size_t i, size_t a, size_t b) const
{
    uint32_t m = UINT32_MAX;

    for (size_t q = a; q < b; q++)
        m = std::min(m, levels_[i].items[q].index);

    return m;
}

uint64_t LevelStore::count_nodes(size_t i) const
{
    LeafSlice s = LeafSlice::whole(*this, i);
    uint64_t c = 0;

    for (size_t q = 0; q <= i; q++) {
        if (q > 0) {
            const int64_t gap = levels_[q].eta - levels_[q - 1].eta;

            if (gap >= 64) {
                if (c != 0)
                    throw std::logic_error("node count not divisible across a level gap");
            } else {
                if ((c & ((uint64_t(1) << gap) - 1)) != 0)
                    throw std::logic_error("node count not divisible across a level gap");

                c >>= gap;
            }
        }

        c += s.hi[q] - s.lo[q];
    }

    return c;
}

LevelState LevelStore::snapshot() const
{
    LevelState st;

    for (const Level& l : levels_) {
        if (!l.items.empty())
            st.levels[l.eta] = l.items;
    }

    return st;
}

uint64_t LeafSlice::leaf_count() const
{
    uint64_t n = 0;

    for (size_t i = 0; i < lo.size(); i++)
        n += hi[i] - lo[i];

    return n;
}

LeafSlice LeafSlice::whole(const LevelStore& st, size_t lv)
{
    LeafSlice s;
    s.lo.assign(lv + 1, 0);
    s.hi.resize(lv + 1);

    for (size_t i = 0; i <= lv; i++)
        s.hi[i] = st.leaves(i);

    return s;
}

LeafSlice LeafSlice::range(const std::vector<size_t>& a, const std::vector<size_t>& b) const
{
    return LeafSlice { a, b };
}

std::pair<LeafSlice, LeafSlice> SplitEngine::cut(size_t lv, const LeafSlice& s) const
{
    if (s.depth() != lv + 1)
        throw std::invalid_argument("slice depth does not match its level");

    LeafSlice top = s, below;

    for (size_t i = 0; i < lv; i++)
        top.hi[i] = top.lo[i];

    below.lo.assign(s.lo.begin(), s.lo.begin() + static_cast<std::ptrdiff_t>(lv));
    below.hi.assign(s.hi.begin(), s.hi.begin() + static_cast<std::ptrdiff_t>(lv));
    return { top, below };
}

u128 SplitEngine::add_weights(const LeafSlice& s) const
{
    u128 sum = 0;

    for (size_t i = 0; i < s.depth(); i++)
        sum = add_checked(sum, st_.range_sum(i, s.lo[i], s.hi[i]));

    return sum;
}

std::vector<WeightItem> SplitEngine::collect(const LeafSlice& s) const
{
    std::vector<WeightItem> v;

    for (size_t i = 0; i < s.depth(); i++) {
        for (size_t q = s.lo[i]; q < s.hi[i]; q++)
            v.push_back(st_.at(i, q));
    }

    return v;
}

uint64_t SplitEngine::shift_down(uint64_t c, size_t i) const
{
    const int64_t gap = st_.eta(i) - st_.eta(i - 1);

    if (gap >= 64) {
        if (c != 0)
            throw std::logic_error("slice does not cover whole nodes");

        return 0;
    }

    if ((c & ((uint64_t(1) << gap) - 1)) != 0)
        throw std::logic_error("slice does not cover whole nodes");

    return c >> gap;
}

uint64_t SplitEngine::node_count(size_t lv, const LeafSlice& s) const
{
    uint64_t c = 0;

    for (size_t i = 0; i <= lv; i++) {
        if (i > 0)
            c = shift_down(c, i);

        c += s.hi[i] - s.lo[i];
    }

    return c;
}

uint64_t SplitEngine::internal_count(size_t lv, const LeafSlice& s) const
{
    if (lv == 0)
        return 0;

    uint64_t c = 0;

    for (size_t i = 0; i < lv; i++) {
        if (i > 0)
            c = shift_down(c, i);

        c += s.hi[i] - s.lo[i];
    }

    return shift_down(c, lv);
}

// Size of the part of [a, b) strictly below lv, in leaves or in lv nodes.
uint64_t SplitEngine::measure(size_t lv, const std::vector<size_t>& a, const std::vector<size_t>& b,
    bool by_nodes) const
{
    if (!by_nodes) {
        uint64_t n = 0;

        for (size_t i = 0; i < lv; i++)
            n += b[i] - a[i];

        return n;
    }

    uint64_t c = 0;

    for (size_t i = 0; i < lv; i++) {
        if (i > 0)
            c = shift_down(c, i);

        c += b[i] - a[i];
    }

    return shift_down(c, lv);
}

SplitEngine::Cut SplitEngine::prune(size_t j, const LeafSlice& s, bool by_nodes, uint64_t s1)
{
    const uint64_t nodes = node_count(j, s);

    if (nodes == 0)
        throw std::invalid_argument("empty leaf slice");

    if (nodes == 1)
        return Cut { 1, s.lo, s.hi };

    if (j == 0) {
        const size_t a = s.lo[0], len = s.hi[0] - s.lo[0];
        const size_t r = by_nodes ? static_cast<size_t>(s1) : (len + 1) / 2 - 1;
        st_.settle(0, a + r);
        return Cut { r + 1, { a + r }, { a + r + 1 } };
    }

    std::vector<size_t> lo = s.lo, hi = s.hi;
    const uint64_t total = by_nodes ? nodes : s.leaf_count();

    if (s1 >= total)
        throw std::out_of_range("rank target outside the slice");

    uint64_t s2 = total - s1 - 1;
    uint64_t pos = 1;
    size_t m = 0;
    Cut c { 0, {}, {} };

    auto top_len = [&]() { return hi[j] - lo[j]; };
    auto below_len = [&]() {
        size_t n = 0;

        for (size_t i = 0; i < j; i++)
            n += hi[i] - lo[i];

        return n;
    };
    auto median = [&]() {
        m = lo[j] + (top_len() + 1) / 2 - 1;
        st_.settle(j, m);
    };
    auto inner = [&]() {
        LeafSlice sub;
        sub.lo.assign(lo.begin(), lo.begin() + static_cast<std::ptrdiff_t>(j));
        sub.hi.assign(hi.begin(), hi.begin() + static_cast<std::ptrdiff_t>(j));
        c = internal(j, sub);
    };
    // M against the chosen internal node, in the strict order.
    auto leaf_greater = [&]() {
        u128 v = 0;

        for (size_t i = 0; i < j; i++)
            v += st_.range_sum(i, c.x[i], c.y[i]);

        st_.comparisons()++;
        const WeightItem& w = st_.at(j, m);

        if (w.value != v)
            return u128(w.value) > v;

        uint32_t mi = UINT32_MAX;

        for (size_t i = 0; i < j; i++)
            mi = std::min(mi, st_.range_min_index(i, c.x[i], c.y[i]));

        return w.index > mi;
    };
    auto take_low = [&](const std::vector<size_t>& v) { std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j), lo.begin()); };
    auto take_high = [&](const std::vector<size_t>& v) { std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j), hi.begin()); };

    if (top_len() != 0)
        median();

    if (below_len() != 0)
        inner();

    while (top_len() != 0 && below_len() != 0) {
        const uint64_t l1 = m - lo[j], l2 = hi[j] - m - 1;

        if (leaf_greater()) {
            const uint64_t upto = measure(j, lo, c.y, by_nodes);

            if (l1 + upto > s1) {
                s2 -= 1 + l2;
                hi[j] = m;

                if (top_len() != 0)
                    median();
            } else {
                s1 -= upto;
                pos += c.pos;
                take_low(c.y);

                if (below_len() != 0)
                    inner();
            }
        } else {
            const uint64_t from = measure(j, c.x, hi, by_nodes);

            if (l2 + from > s2) {
                s1 -= l1 + 1;
                pos += l1 + 1;
                lo[j] = m + 1;

                if (top_len() != 0)
                    median();
            } else {
                s2 -= from;
                take_high(c.x);

                if (below_len() != 0)
                    inner();
            }
        }
    }

    if (top_len() == 0) {
        while (true) {
            const bool v1 = measure(j, lo, c.x, by_nodes) > s1;
            const bool v2 = measure(j, c.y, hi, by_nodes) > s2;

            if (!v1 && !v2)
                break;

            if (v1 && v2)
                throw std::logic_error("both flanks exceed their budgets");

            if (v2) {
                s1 -= measure(j, lo, c.y, by_nodes);
                pos += c.pos;
                take_low(c.y);
            } else {
                s2 -= measure(j, c.x, hi, by_nodes);
                take_high(c.x);
            }

            inner();
        }

        pos += c.pos - 1;
        Cut r { pos, c.x, c.y };
        r.x.push_back(lo[j]);
        r.y.push_back(lo[j]);
        return r;
    }

    while (true) {
        const uint64_t l1 = m - lo[j], l2 = hi[j] - m - 1;
        const bool v1 = l1 > s1, v2 = l2 > s2;

        if (!v1 && !v2)
            break;

        if (v1 && v2)
            throw std::logic_error("both flanks exceed their budgets");

        if (v2) {
            s1 -= l1 + 1;
            pos += l1 + 1;
            lo[j] = m + 1;
        } else {
            s2 -= 1 + l2;
            hi[j] = m;
        }

        median();
    }

    pos += m - lo[j];
    Cut r { pos, lo, lo };
    r.x[j] = m;
    r.y[j] = m + 1;
    return r;
}

SplitEngine::Cut SplitEngine::internal(size_t j, const LeafSlice& s)
{
    if (j == 0)
        throw std::invalid_argument("no internal nodes at the lowest level");

    const uint64_t count = internal_count(j, s);

    if (count == 0)
        throw std::invalid_argument("empty leaf slice");

    if (count == 1)
        return Cut { 1, s.lo, s.hi };

    Cut r = prune(j - 1, s, false, s.leaf_count() / 2);
    const uint64_t alpha = r.pos;
    const int64_t gap = st_.eta(j) - st_.eta(j - 1);

    if (gap > 62)
        throw std::overflow_error("level gap too large for a node block");

    const uint64_t lambda = uint64_t(1) << gap;
    const uint64_t beta = (alpha - 1) % lambda;
    std::vector<size_t> x = r.x, y = r.y;

    if (beta != 0) {
        LeafSlice o1 { s.lo, r.x };
        const uint64_t cnt = node_count(j - 1, o1);
        x = prune(j - 1, o1, true, cnt - beta).x;
    }

    if (lambda - beta - 1 != 0) {
        LeafSlice o2 { r.y, s.hi };
        y = prune(j - 1, o2, true, lambda - beta - 2).y;
    }

    return Cut { (alpha + lambda - 1) / lambda, std::move(x), std::move(y) };
}

SplitResult SplitEngine::expand(const LeafSlice& s, const Cut& c) const
{
    return SplitResult { c.pos, LeafSlice { s.lo, c.x }, LeafSlice { c.x, c.y }, LeafSlice { c.y, s.hi } };
}

SplitResult SplitEngine::find_splitting_all(size_t lv, const LeafSlice& s)
{
    if (s.depth() != lv + 1)
        throw std::invalid_argument("slice depth does not match its level");

    return expand(s, prune(lv, s, false, s.leaf_count() / 2));
}

SplitResult SplitEngine::find_splitting_internal(size_t lv, const LeafSlice& s)
{
    if (s.depth() != lv)
        throw std::invalid_argument("slice depth does not match its level");

    return expand(s, internal(lv, s));
}

SplitResult SplitEngine::find_rank(uint64_t t, size_t lv, const LeafSlice& s)
{
    const uint64_t cnt = node_count(lv, s);

    if (t < 1 || t > cnt)
        throw std::out_of_range("node rank out of range");

    return expand(s, prune(lv, s, true, t - 1));
}

std::pair<LeafSlice, LeafSlice> SplitEngine::find_t_smallest(uint64_t t, size_t lv, const LeafSlice& s)
{
    if (t == 0)
        return { LeafSlice { s.lo, s.lo }, s };

    SplitResult r = find_rank(t, lv, s);
    return { LeafSlice { s.lo, r.chi.hi }, r.upper };
}

std::pair<LeafSlice, LeafSlice> SplitEngine::find_t_largest(uint64_t t, size_t lv, const LeafSlice& s)
{
    if (t == 0)
        return { s, LeafSlice { s.hi, s.hi } };

    const uint64_t cnt = node_count(lv, s);

    if (t > cnt)
        throw std::out_of_range("node rank out of range");

    SplitResult r = find_rank(cnt - t + 1, lv, s);
    return { r.lower, LeafSlice { r.chi.lo, s.hi } };
}

} // namespace minred
