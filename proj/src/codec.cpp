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

#include "minred/codec.hpp"

#include <cstring>

namespace minred {

CanonicalTable canonical_codes(const CodeLengthProfile& lengths)
{
    if (lengths.kraft().compare_one() > 0)
        throw codec_error("length profile violates the Kraft inequality");

    CanonicalTable t;
    const size_t n = lengths.size();
    t.length = lengths.lengths();
    t.code.assign(n, 0);

    for (uint32_t l : t.length) {
        if (l > max_code_length)
            throw codec_error("codeword longer than 64 bits");

        t.max_length = std::max(t.max_length, l);
    }

    t.count.assign(t.max_length + 1, 0);
    t.first_code.assign(t.max_length + 1, 0);
    t.offset.assign(t.max_length + 2, 0);

    for (uint32_t l : t.length)
        t.count[l]++;

    for (uint32_t l = 1; l <= t.max_length; l++)
        t.offset[l + 1] = t.offset[l] + t.count[l];

    t.symbols.assign(n, 0);
    std::vector<uint32_t> fill(t.offset.begin(), t.offset.end());

    for (uint32_t s = 0; s < n; s++)
        t.symbols[fill[t.length[s]]++] = s;

    uint64_t code = 0;

    for (uint32_t l = 1; l <= t.max_length; l++) {
        code = (code + t.count[l - 1]) << 1;
        t.first_code[l] = code;
    }

    std::vector<uint64_t> next(t.first_code);

    for (uint32_t s = 0; s < n; s++)
        t.code[s] = next[t.length[s]]++;

    return t;
}

BitBuffer encode(std::span<const uint32_t> symbols, const CanonicalTable& table)
{
    BitBuffer out;
    uint64_t acc = 0;
    uint32_t pending = 0;

    for (uint32_t s : symbols) {
        if (s >= table.length.size())
            throw codec_error("symbol " + std::to_string(s) + " is not in the table");

        const uint32_t len = table.length[s];
        const uint64_t code = table.code[s];
        out.bit_count += len;

        for (uint32_t b = len; b-- > 0;) {
            acc = (acc << 1) | ((code >> b) & 1);

            if (++pending == 8) {
                out.bytes.push_back(static_cast<uint8_t>(acc));
                acc = 0;
                pending = 0;
            }
        }
    }

    if (pending != 0)
        out.bytes.push_back(static_cast<uint8_t>(acc << (8 - pending)));

    return out;
}

std::vector<uint32_t> decode(std::span<const uint8_t> bytes, uint64_t bit_count, const CanonicalTable& table)
{
    if (bit_count > uint64_t(bytes.size()) * 8)
        throw codec_error("truncated stream");

    std::vector<uint32_t> out;
    uint64_t code = 0;
    uint32_t len = 0;

    for (uint64_t i = 0; i < bit_count; i++) {
        code = (code << 1) | ((bytes[i >> 3] >> (7 - (i & 7))) & 1);
        len++;

        if (len > table.max_length)
            throw codec_error("code not in table");

        if (table.count[len] != 0 && code >= table.first_code[len] && code - table.first_code[len] < table.count[len]) {
            out.push_back(table.symbols[table.offset[len] + (code - table.first_code[len])]);
            code = 0;
            len = 0;
        }
    }

    if (len != 0)
        throw codec_error("truncated stream");

    return out;
}

namespace {

void put_le(std::vector<uint8_t>& out, uint64_t v, int bytes)
{
    for (int i = 0; i < bytes; i++)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint64_t get_le(std::span<const uint8_t> data, size_t& at, int bytes)
{
    if (data.size() - at < static_cast<size_t>(bytes))
        throw codec_error("container truncated");

    uint64_t v = 0;

    for (int i = 0; i < bytes; i++)
        v |= uint64_t(data[at + i]) << (8 * i);

    at += bytes;
    return v;
}

} // namespace

std::vector<uint8_t> write_container(const CodeLengthProfile& lengths, const BitBuffer& payload)
{
    std::vector<uint8_t> out { 'P', 'F', 'X', '1' };
    put_le(out, lengths.size(), 8);

    for (uint32_t l : lengths.lengths()) {
        if (l > 0xFFFF)
            throw codec_error("length does not fit 16 bits");

        put_le(out, l, 2);
    }

    put_le(out, payload.bit_count, 8);
    out.insert(out.end(), payload.bytes.begin(), payload.bytes.end());
    return out;
}

Container read_container(std::span<const uint8_t> data)
{
    if (data.size() < 4 || std::memcmp(data.data(), "PFX1", 4) != 0)
        throw codec_error("bad magic");

    size_t at = 4;
    const uint64_t n = get_le(data, at, 8);

    if (n > (data.size() - at) / 2)
        throw codec_error("container truncated");

    std::vector<uint32_t> lengths(n);

    for (uint64_t i = 0; i < n; i++) {
        lengths[i] = static_cast<uint32_t>(get_le(data, at, 2));

        if (lengths[i] == 0)
            throw codec_error("zero codeword length");
    }

    Container c;
    c.lengths = CodeLengthProfile(std::move(lengths));
    c.payload.bit_count = get_le(data, at, 8);
    const uint64_t need = (c.payload.bit_count + 7) / 8;

    if (data.size() - at != need)
        throw codec_error("payload size does not match its bit count");

    c.payload.bytes.assign(data.begin() + static_cast<std::ptrdiff_t>(at), data.end());

    if (c.payload.bit_count % 8 != 0) {
        const uint8_t pad = static_cast<uint8_t>(0xFF >> (c.payload.bit_count % 8));

        if ((c.payload.bytes.back() & pad) != 0)
            throw codec_error("nonzero padding bits");
    }

    return c;
}

} // namespace minred
