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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "minred/codec.hpp"
#include "minred/construct.hpp"
#include "minred/gen.hpp"
#include "minred/oracle.hpp"

using namespace minred;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_usage = 2;

// Bad input, bad flags, I/O trouble: everything that exits with 2.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);

    if (!in)
        throw input_error("cannot open " + path);

    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, std::string_view data)
{
    if (path == "-") {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        std::cout.flush();
        return;
    }

    std::ofstream out(path, std::ios::binary);

    if (!out || !out.write(data.data(), static_cast<std::streamsize>(data.size())))
        throw input_error("cannot write " + path);
}

std::vector<std::string> split_lines(const std::string& text)
{
    std::vector<std::string> lines;
    size_t at = 0;

    while (at < text.size()) {
        size_t end = text.find('\n', at);

        if (end == std::string::npos)
            end = text.size();

        std::string line = text.substr(at, end - at);

        if (!line.empty() && line.back() == '\r')
            line.pop_back();

        lines.push_back(std::move(line));
        at = end + 1;
    }

    return lines;
}

uint64_t parse_number(const std::string& s, const std::string& where)
{
    uint64_t v = 0;
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);

    if (ec == std::errc::result_out_of_range)
        throw input_error(where + ": value overflows");

    if (s.empty() || ec != std::errc() || p != end)
        throw input_error(where + ": not a decimal integer: '" + s + "'");

    return v;
}

std::vector<uint64_t> read_weights(const std::string& path)
{
    const std::vector<std::string> lines = split_lines(read_file(path));
    std::vector<uint64_t> v;

    for (size_t i = 0; i < lines.size(); i++) {
        const std::string where = path + ":" + std::to_string(i + 1);
        const uint64_t x = parse_number(lines[i], where);

        if (x == 0)
            throw input_error(where + ": weight must be positive");

        if (x > (uint64_t(1) << 63) - 1)
            throw input_error(where + ": weight exceeds 2^63-1");

        v.push_back(x);
    }

    if (v.empty())
        throw input_error(path + ": no weights");

    return v;
}

std::vector<uint32_t> read_lengths(const std::string& path)
{
    const std::vector<std::string> lines = split_lines(read_file(path));
    std::vector<uint32_t> v;

    for (size_t i = 0; i < lines.size(); i++) {
        const std::string where = path + ":" + std::to_string(i + 1);
        const uint64_t x = parse_number(lines[i], where);

        if (x == 0 || x > UINT32_MAX)
            throw input_error(where + ": length out of range");

        v.push_back(static_cast<uint32_t>(x));
    }

    return v;
}

// Symbols must be written the way decode writes them back.
std::vector<uint32_t> read_symbols(const std::string& path, size_t n)
{
    const std::string text = read_file(path);

    if (!text.empty() && text.back() != '\n')
        throw input_error(path + ": last line has no newline");

    const std::vector<std::string> lines = split_lines(text);
    std::vector<uint32_t> v;

    for (size_t i = 0; i < lines.size(); i++) {
        const std::string where = path + ":" + std::to_string(i + 1);
        const uint64_t x = parse_number(lines[i], where);

        if (lines[i].size() > 1 && lines[i][0] == '0')
            throw input_error(where + ": leading zero");

        if (x >= n)
            throw input_error(where + ": symbol " + lines[i] + " has no weight");

        v.push_back(static_cast<uint32_t>(x));
    }

    return v;
}

template <typename T>
std::string join_lines(const std::vector<T>& v)
{
    std::string s;

    for (const T& x : v)
        s += std::to_string(x) + "\n";

    return s;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;

    while (std::getline(in, item, ',')) {
        if (!item.empty())
            out.push_back(item);
    }

    return out;
}

// Input order kept in the indices, items sorted by key.
WeightList sorted_copy(const std::vector<uint64_t>& v)
{
    std::vector<WeightItem> items;

    for (size_t i = 0; i < v.size(); i++)
        items.push_back(WeightItem { v[i], static_cast<uint32_t>(i) });

    std::sort(items.begin(), items.end(), key_less);
    return WeightList(std::move(items), true);
}

struct Run {
    CodeLengthProfile lengths;
    uint64_t iterations = 0;
    uint64_t comparisons = 0;
    uint64_t time_ns = 0;
};

const std::vector<std::string> algos { "detailed", "basic", "huffman", "two-queue" };

Run run_algo(const std::string& algo, const WeightList& w)
{
    Run r;
    const auto t0 = std::chrono::steady_clock::now();

    if (algo == "huffman") {
        r.lengths = huffman_lengths(w);
    } else if (algo == "two-queue") {
        r.lengths = huffman_sorted_lengths(w);
    } else {
        const Construction c = construct(w, { algo == "basic" ? Algo::basic : Algo::detailed, true });
        r.lengths = c.lengths;
        r.iterations = c.stats.iterations;
        r.comparisons = c.stats.weight_comparisons;
    }

    r.time_ns = static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count());
    return r;
}

int cmd_lengths(const std::string& algo, bool sorted, const std::string& in, const std::string& out, bool stats)
{
    const std::vector<uint64_t> v = read_weights(in);
    WeightList w;

    if (sorted) {
        try {
            w = WeightList::from_values(v, true);
        } catch (const std::invalid_argument&) {
            throw input_error(in + ": weights are not in non-decreasing order");
        }
    } else {
        w = algo == "two-queue" ? sorted_copy(v) : WeightList::from_values(v);
    }

    const Run r = run_algo(algo, w);
    write_file(out, join_lines(r.lengths.lengths()));

    if (stats) {
        std::cerr << "algo=" << algo << "\n"
                  << "n=" << v.size() << "\n"
                  << "k=" << distinct_length_count(r.lengths) << "\n"
                  << "cost=" << to_string(code_cost(w, r.lengths)) << "\n"
                  << "kraft=" << r.lengths.kraft().to_string() << "\n"
                  << "time_ns=" << r.time_ns << "\n";

        if (algo == "detailed" || algo == "basic")
            std::cerr << "iterations=" << r.iterations << "\n"
                      << "comparisons=" << r.comparisons << "\n";
    }

    return exit_ok;
}

int cmd_verify(const std::string& weights_path, const std::string& lengths_path)
{
    const std::vector<uint64_t> v = read_weights(weights_path);
    const std::vector<uint32_t> l = read_lengths(lengths_path);

    if (v.size() != l.size())
        throw input_error("weights and lengths differ in count (" + std::to_string(v.size()) + " vs "
            + std::to_string(l.size()) + ")");

    const WeightList w = WeightList::from_values(v);
    const CodeLengthProfile p(l);
    const int kraft = p.kraft().compare_one();
    const u128 cost = code_cost(w, p);
    const u128 best = code_cost(w, huffman_lengths(w));
    // A single weight gets one bit, which leaves the sum at 1/2.
    const bool kraft_ok = v.size() == 1 ? kraft <= 0 : kraft == 0;
    const bool monotone = is_monotone(w, p);
    const bool optimal = kraft <= 0 && cost == best;

    std::cout << "kraft=" << p.kraft().to_string() << "\n";

    if (kraft > 0)
        std::cout << "kraft_check=rejected (sum above 1, not a prefix code)\n";
    else if (!kraft_ok)
        std::cout << "kraft_check=below 1 (incomplete code)\n";
    else
        std::cout << "kraft_check=ok\n";

    std::cout << "cost=" << to_string(cost) << "\n"
              << "optimal_cost=" << to_string(best) << "\n"
              << "monotone=" << (monotone ? "yes" : "no") << "\n"
              << "optimal=" << (optimal ? "yes" : "no") << "\n";

    return kraft_ok && monotone && optimal ? exit_ok : exit_verify;
}

Family family_arg(const std::string& name)
{
    const std::optional<Family> f = parse_family(name);

    if (!f)
        throw input_error("unknown family '" + name + "'");

    return *f;
}

int cmd_gen(const std::string& family, uint64_t n, uint64_t seed, const std::string& out)
{
    std::vector<uint64_t> v;

    try {
        v = generate(family_arg(family), n, seed);
    } catch (const std::invalid_argument& e) {
        throw input_error(e.what());
    }

    write_file(out, join_lines(v));
    return exit_ok;
}

struct BenchMode {
    std::string name;
    std::string algo;
    bool sorted;
};

const std::vector<BenchMode> bench_modes {
    { "detailed", "detailed", false },
    { "detailed-sorted", "detailed", true },
    { "basic", "basic", false },
    { "basic-sorted", "basic", true },
    { "huffman", "huffman", false },
    { "two-queue", "two-queue", true },
};

int cmd_bench(const std::string& families, const std::string& sizes, const std::string& modes, int repeat,
    uint64_t seed, const std::string& out)
{
    std::vector<Family> fs;
    std::vector<uint64_t> ns;
    std::vector<BenchMode> ms;

    for (const std::string& f : split_list(families))
        fs.push_back(family_arg(f));

    for (const std::string& s : split_list(sizes))
        ns.push_back(parse_number(s, "--sizes"));

    for (const std::string& m : split_list(modes)) {
        auto it = std::find_if(bench_modes.begin(), bench_modes.end(), [&](const BenchMode& b) { return b.name == m; });

        if (it == bench_modes.end())
            throw input_error("unknown mode '" + m + "'");

        ms.push_back(*it);
    }

    if (fs.empty() || ns.empty() || ms.empty() || repeat < 1)
        throw input_error("bench needs families, sizes, modes and a positive repeat count");

    const char* header = "family,n,k,mode,time_ns,comparisons,iterations\n";
    std::string rows = header, medians = header;

    for (Family f : fs) {
        for (uint64_t n : ns) {
            std::vector<uint64_t> v;

            try {
                v = generate(f, n, seed);
            } catch (const std::invalid_argument& e) {
                std::cerr << "skipping " << family_name(f) << " n=" << n << ": " << e.what() << "\n";
                continue;
            }

            const WeightList unsorted = WeightList::from_values(v);
            const WeightList sorted = sorted_list(v);

            for (const BenchMode& m : ms) {
                const WeightList& w = m.sorted ? sorted : unsorted;
                std::vector<Run> runs;

                for (int r = 0; r < repeat; r++)
                    runs.push_back(run_algo(m.algo, w));

                auto row = [&](const Run& r) {
                    return family_name(f) + "," + std::to_string(n) + ","
                        + std::to_string(distinct_length_count(r.lengths)) + "," + m.name + ","
                        + std::to_string(r.time_ns) + "," + std::to_string(r.comparisons) + ","
                        + std::to_string(r.iterations) + "\n";
                };

                for (const Run& r : runs)
                    rows += row(r);

                std::vector<Run> by_time = runs;
                std::sort(by_time.begin(), by_time.end(), [](const Run& a, const Run& b) { return a.time_ns < b.time_ns; });
                medians += row(by_time[by_time.size() / 2]);
            }
        }
    }

    write_file(out, rows);
    std::filesystem::path companion(out);
    companion.replace_extension(".median.csv");
    write_file(companion.string(), medians);
    return exit_ok;
}

int cmd_encode(const std::string& weights_path, const std::string& in, const std::string& out)
{
    const std::vector<uint64_t> v = read_weights(weights_path);
    const std::vector<uint32_t> symbols = read_symbols(in, v.size());
    const CodeLengthProfile p = construct(WeightList::from_values(v), ConstructionMode {}).lengths;
    const BitBuffer b = encode(symbols, canonical_codes(p));
    const std::vector<uint8_t> c = write_container(p, b);
    write_file(out, std::string_view(reinterpret_cast<const char*>(c.data()), c.size()));
    return exit_ok;
}

int cmd_decode(const std::string& in, const std::string& out)
{
    const std::string raw = read_file(in);
    const std::span<const uint8_t> data(reinterpret_cast<const uint8_t*>(raw.data()), raw.size());
    const Container c = read_container(data);
    const std::vector<uint32_t> symbols = decode(c.payload.bytes, c.payload.bit_count, canonical_codes(c.lengths));
    write_file(out, join_lines(symbols));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app { "Minimum-redundancy code lengths, checks, benchmarks and a canonical coder" };
    app.require_subcommand(1);

    std::string algo = "detailed", in, out = "-", weights, lengths, family, families = "example41",
                sizes = "1024,4096,16384", modes = "detailed,detailed-sorted,huffman,two-queue";
    bool sorted = false, stats = false;
    uint64_t n = 0, seed = 1;
    int repeat = 5;

    CLI::App* c_lengths = app.add_subcommand("lengths", "Compute codeword lengths for a weight file");
    c_lengths->add_option("--algo", algo, "detailed, basic, huffman or two-queue")->check(CLI::IsMember(algos));
    c_lengths->add_flag("--sorted", sorted, "Input is already in non-decreasing order");
    c_lengths->add_option("--in", in, "Weight file, one positive integer per line")->required();
    c_lengths->add_option("--out", out, "Lengths file, '-' for stdout");
    c_lengths->add_flag("--stats", stats, "Print key=value statistics on stderr");

    CLI::App* c_verify = app.add_subcommand("verify", "Check a length file against its weights");
    c_verify->add_option("--weights", weights, "Weight file")->required();
    c_verify->add_option("--lengths", lengths, "Lengths file")->required();

    CLI::App* c_gen = app.add_subcommand("gen", "Write a generated weight file");
    c_gen->add_option("--family", family, "example41, equal, exponential, uniform, geometric or two-cluster")
        ->required();
    c_gen->add_option("--n", n, "Size; for example41 the level-0 leaf count")->required();
    c_gen->add_option("--seed", seed, "Random seed");
    c_gen->add_option("--out", out, "Weight file, '-' for stdout");

    CLI::App* c_bench = app.add_subcommand("bench", "Time constructions and write CSV");
    c_bench->add_option("--families", families, "Comma-separated families");
    c_bench->add_option("--sizes", sizes, "Comma-separated sizes");
    c_bench->add_option("--modes", modes,
        "Comma-separated: detailed, detailed-sorted, basic, basic-sorted, huffman, two-queue");
    c_bench->add_option("--repeat", repeat, "Runs per configuration");
    c_bench->add_option("--seed", seed, "Random seed");
    c_bench->add_option("--out", out, "CSV file; medians go to <name>.median.csv")->required();

    CLI::App* c_encode = app.add_subcommand("encode", "Encode a symbol file with the optimal code");
    c_encode->add_option("--weights", weights, "Weight file")->required();
    c_encode->add_option("--in", in, "Symbols, one index per line")->required();
    c_encode->add_option("--out", out, "Container file")->required();

    CLI::App* c_decode = app.add_subcommand("decode", "Decode a container back to symbols");
    c_decode->add_option("--in", in, "Container file")->required();
    c_decode->add_option("--out", out, "Symbol file, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }

    try {
        if (c_lengths->parsed())
            return cmd_lengths(algo, sorted, in, out, stats);
        if (c_verify->parsed())
            return cmd_verify(weights, lengths);
        if (c_gen->parsed())
            return cmd_gen(family, n, seed, out);
        if (c_bench->parsed())
            return cmd_bench(families, sizes, modes, repeat, seed, out);
        if (c_encode->parsed())
            return cmd_encode(weights, in, out);
        if (c_decode->parsed())
            return cmd_decode(in, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    return exit_usage;
}
