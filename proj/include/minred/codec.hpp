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

namespace minred {

class codec_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr uint32_t max_code_length = 64;

struct CanonicalTable {
    std::vector<uint32_t> length;     // by symbol
    std::vector<uint64_t> code;       // by symbol, MSB first on the wire
    std::vector<uint64_t> first_code; // by length, index 0 unused
    std::vector<uint32_t> count;      // by length
    std::vector<uint32_t> offset;     // by length, into symbols
    std::vector<uint32_t> symbols;    // sorted by (length, index)
    uint32_t max_length = 0;
};

CanonicalTable canonical_codes(const CodeLengthProfile& lengths);

struct BitBuffer {
    std::vector<uint8_t> bytes;
    uint64_t bit_count = 0;
};

BitBuffer encode(std::span<const uint32_t> symbols, const CanonicalTable& table);

std::vector<uint32_t> decode(std::span<const uint8_t> bytes, uint64_t bit_count, const CanonicalTable& table);

// "PFX1", n (u64 LE), n lengths (u16 LE), payload bits (u64 LE), payload.
std::vector<uint8_t> write_container(const CodeLengthProfile& lengths, const BitBuffer& payload);

struct Container {
    CodeLengthProfile lengths;
    BitBuffer payload;
};

Container read_container(std::span<const uint8_t> data);

} // namespace minred
