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

#include "doctest.h"

#include "minred/codec.hpp"
#include "minred/construct.hpp"
#include "support.hpp"

using namespace minred;

namespace {

// Prefix-free and canonical: codes of one length are consecutive, and a
// shorter code is numerically smaller than any prefix of a longer one.
bool canonical_and_prefix_free(const CanonicalTable& t)
{
    const size_t n = t.length.size();

    for (size_t a = 0; a < n; a++) {
        for (size_t b = 0; b < n; b++) {
            if (a == b || t.length[a] > t.length[b])
                continue;

            const uint32_t shift = t.length[b] - t.length[a];

            if ((t.code[b] >> shift) == t.code[a])
                return false;

            if (t.length[a] == t.length[b] && a < b && t.code[a] >= t.code[b])
                return false;

            if (t.length[a] < t.length[b] && (t.code[b] >> shift) < t.code[a])
                return false;
        }
    }

    return true;
}

} // namespace

TEST_SUITE("codec")
{
    TEST_CASE("canonical codes")
    {
        const CanonicalTable t = canonical_codes(CodeLengthProfile({ 2, 1, 3, 3 }));
        CHECK(t.code == std::vector<uint64_t> { 0b10, 0b0, 0b110, 0b111 });
        CHECK(t.max_length == 3);
        CHECK(canonical_and_prefix_free(t));

        const CanonicalTable one = canonical_codes(CodeLengthProfile({ 1 }));
        CHECK(one.code == std::vector<uint64_t> { 0 });

        CHECK_THROWS_AS(canonical_codes(CodeLengthProfile({ 1, 1, 1 })), codec_error);

        std::vector<uint32_t> deep;

        for (uint32_t l = 1; l <= 65; l++)
            deep.push_back(l);

        deep.push_back(65);
        CHECK_THROWS_AS(canonical_codes(CodeLengthProfile(deep)), codec_error);

        deep.resize(64);
        deep.push_back(64);
        const CanonicalTable d = canonical_codes(CodeLengthProfile(deep));
        CHECK(d.code[63] == ~uint64_t(0) - 1);
        CHECK(d.code[64] == ~uint64_t(0));
    }

    TEST_CASE("bit packing is most significant bit first")
    {
        const CanonicalTable t = canonical_codes(CodeLengthProfile({ 2, 1, 3, 3 }));
        const std::vector<uint32_t> msg { 0, 1, 2, 3, 1 };
        const BitBuffer b = encode(msg, t);
        // 10 0 110 111 0 -> 1001 1011 10 + padding
        CHECK(b.bit_count == 10);
        REQUIRE(b.bytes.size() == 2);
        CHECK(b.bytes[0] == 0b10011011);
        CHECK(b.bytes[1] == 0b10000000);
        CHECK(decode(b.bytes, b.bit_count, t) == msg);
    }

    TEST_CASE("empty and single-symbol streams")
    {
        const CanonicalTable t = canonical_codes(CodeLengthProfile({ 1 }));
        const BitBuffer e = encode(std::vector<uint32_t> {}, t);
        CHECK(e.bit_count == 0);
        CHECK(e.bytes.empty());
        CHECK(decode(e.bytes, 0, t).empty());

        const std::vector<uint32_t> msg(9, 0);
        const BitBuffer b = encode(msg, t);
        CHECK(b.bit_count == 9);
        CHECK(decode(b.bytes, b.bit_count, t) == msg);
    }

    TEST_CASE("decode errors")
    {
        const CanonicalTable t = canonical_codes(CodeLengthProfile({ 2, 1, 3, 3 }));
        const std::vector<uint8_t> bytes { 0b11000000 };
        CHECK_THROWS_AS(decode(bytes, 2, t), codec_error);
        CHECK_THROWS_AS(decode(bytes, 9, t), codec_error);

        // Lengths 2, 2, 2 leave code 11 unused.
        const CanonicalTable partial = canonical_codes(CodeLengthProfile({ 2, 2, 2 }));
        CHECK_THROWS_AS(decode(bytes, 2, partial), codec_error);
        CHECK_THROWS_AS(encode(std::vector<uint32_t> { 3 }, partial), codec_error);
    }

    TEST_CASE("container layout and validation")
    {
        const CodeLengthProfile p({ 2, 1, 3, 3 });
        const CanonicalTable t = canonical_codes(p);
        const BitBuffer b = encode(std::vector<uint32_t> { 0, 1, 2, 3, 1 }, t);
        const std::vector<uint8_t> c = write_container(p, b);

        const std::vector<uint8_t> expect { 'P', 'F', 'X', '1', 4, 0, 0, 0, 0, 0, 0, 0, 2, 0, 1, 0, 3, 0, 3, 0, 10, 0,
            0, 0, 0, 0, 0, 0, 0b10011011, 0b10000000 };
        CHECK(c == expect);

        const Container back = read_container(c);
        CHECK(back.lengths.lengths() == p.lengths());
        CHECK(back.payload.bit_count == 10);
        CHECK(back.payload.bytes == b.bytes);

        std::vector<uint8_t> bad = c;
        bad[0] = 'Q';
        CHECK_THROWS_AS(read_container(bad), codec_error);

        bad = c;
        bad.pop_back();
        CHECK_THROWS_AS(read_container(bad), codec_error);

        bad = c;
        bad.push_back(0);
        CHECK_THROWS_AS(read_container(bad), codec_error);

        bad = c;
        bad.back() |= 1;
        CHECK_THROWS_AS(read_container(bad), codec_error);

        bad = c;
        bad[12] = 0;
        CHECK_THROWS_AS(read_container(bad), codec_error);

        bad = c;
        bad[4] = 0xFF;
        CHECK_THROWS_AS(read_container(bad), codec_error);

        CHECK_THROWS_AS(read_container(std::vector<uint8_t> { 'P', 'F' }), codec_error);
    }

    TEST_CASE("random round trips")
    {
        std::mt19937_64 rng(51);

        for (int round = 0; round < 50; round++) {
            const size_t n = 1 + rng() % 256;
            const WeightList w = WeightList::from_values(test::random_values(rng, n, 1000));
            const CodeLengthProfile p = construct(w, ConstructionMode {}).lengths;
            const CanonicalTable t = canonical_codes(p);
            REQUIRE(canonical_and_prefix_free(t));

            std::vector<uint32_t> msg(rng() % 5000);
            uint64_t bits = 0;

            for (uint32_t& s : msg) {
                s = static_cast<uint32_t>(rng() % n);
                bits += p[s];
            }

            const BitBuffer b = encode(msg, t);
            REQUIRE(b.bit_count == bits);
            const Container c = read_container(write_container(p, b));
            REQUIRE(decode(c.payload.bytes, c.payload.bit_count, canonical_codes(c.lengths)) == msg);
        }
    }

    TEST_CASE("frequency-matching corpus costs the optimum")
    {
        const std::vector<uint64_t> v = test::worked_example();
        const WeightList w = WeightList::from_values(v);
        const CodeLengthProfile p = construct(w, ConstructionMode {}).lengths;
        std::vector<uint32_t> msg;

        for (uint32_t s = 0; s < v.size(); s++)
            msg.insert(msg.end(), v[s], s);

        CHECK(encode(msg, canonical_codes(p)).bit_count == 565);
    }
}
