// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "dbnslab/coding.hpp"
#include "dbnslab/error.hpp"
#include "dbnslab/numsys.hpp"
#include "dbnslab/solver.hpp"
#include "dbnslab/stats.hpp"
#include "dbnslab/storage.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace dbnslab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

class Check {
public:
    void require(bool cond, const std::string& what) {
        if (!cond && ok_) {
            ok_ = false;
            failure_ = what;
        }
    }
    bool ok() const { return ok_; }
    Outcome done(std::string detail) const { return {ok_, ok_ ? std::move(detail) : failure_}; }

private:
    bool ok_ = true;
    std::string failure_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const OptimalTable table = solve_batch(dbns(), 12);
    std::uint64_t mismatches = 0;
    for (std::uint64_t m = 0; m < 4096; ++m) {
        if (solve_single(dbns(), m).kstar != table[m]) ++mismatches;
    }
    const double secs = seconds_since(t0);
    c.require(mismatches == 0, std::to_string(mismatches) + " of 4096 values disagree");
    c.require(secs < 10.0, "took " + std::to_string(secs) + " s (limit 10 s)");
    return c.done("4096/4096 agree in " + std::to_string(secs) + " s");
}

Outcome worked_example_15() {
    Check c;
    const OptimalTable table = solve_batch(dbns(), 4);
    c.require(table[15] == 2, "k*_15 = " + std::to_string(table[15]));
    c.require(solve_single(dbns(), 15).kstar == 2, "iterative deepening disagrees on k*_15");
    auto term = [](std::uint32_t x, std::uint32_t y) { return Term::make(dbns(), 1, {x, y}); };
    const Representation two({term(0, 1), term(2, 1)});
    const Representation four({term(0, 0), term(1, 0), term(2, 0), term(3, 0)});
    c.require(evaluate(two) == 15, "[2,<0,2>,<1,1>] does not evaluate to 15");
    c.require(evaluate(four) == 15, "[4,<0,1,2,3>,<0,0,0,0>] does not evaluate to 15");
    return c.done("k*_15 = 2; both representations evaluate to 15");
}

Outcome uniform_huffman() {
    Check c;
    for (unsigned n = 1; n <= 10; ++n) {
        const HuffmanCode code = huffman(Distribution::uniform(std::size_t{1} << n));
        const bool all_n = std::all_of(code.lengths.begin(), code.lengths.end(), [&](unsigned l) { return l == n; });
        c.require(all_n && code.lengths.size() == (std::size_t{1} << n), "n=" + std::to_string(n) + " has a length != n");
        c.require(min_average_length_uniform(n) == n, "min_average_length_uniform(" + std::to_string(n) + ")");
    }
    return c.done("all 2^n lengths equal n for n = 1..10");
}

Outcome codebook_n12() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const OptimalTable table = solve_batch(dbns(), 12);
    const CodeBook book = build_codebook(table);
    const PrefixCheck prefix = verify_prefix_free(book);
    c.require(book.words.size() == 4096, "codebook size");
    c.require(prefix.prefix_free, "codebook is not prefix-free");
    for (std::uint64_t m = 0; m < book.words.size(); ++m) {
        if (decode(book.words[m], dbns(), book.layout) != m) {
            c.require(false, "roundtrip fails at m=" + std::to_string(m));
            break;
        }
    }
    const Rational kraft = kraft_sum(book);
    std::ostringstream ks;
    ks << kraft;
    c.require(kraft <= 1, "Kraft sum " + ks.str() + " > 1");
    const double secs = seconds_since(t0);
    c.require(secs < 5.0, "took " + std::to_string(secs) + " s (limit 5 s)");
    return c.done("prefix-free, roundtrip ok, Kraft sum " + ks.str() + " in " + std::to_string(secs) + " s");
}

Outcome code_length_bound() {
    Check c;
    std::string detail;
    for (unsigned n : {4u, 8u, 16u}) {
        const StatsRow row = compute_row(dbns(), n);
        const FieldLayout& l = row.layout;
        // avg_code_len >= n
        c.require(row.avg_code_len.num >= std::uint64_t{n} * row.avg_code_len.den,
                  "average code length below n at n=" + std::to_string(n));
        // A* >= (n - w_k) / (w_d + q w_e)
        const __int128 lhs = static_cast<__int128>(row.a_star.num) * l.group_width();
        const __int128 rhs = (static_cast<__int128>(n) - l.w_k) * row.a_star.den;
        c.require(lhs >= rhs, "A* below (n - w_k)/(w_d + q w_e) at n=" + std::to_string(n));
        c.require(check_row(row).empty(), "row invariants fail at n=" + std::to_string(n));
        if (n <= 12) {
            std::uint64_t total = 0;
            for (const auto& w : build_codebook(solve_batch(dbns(), n)).words) total += w.size();
            c.require(total == row.avg_code_len.num, "length formula differs from materialized codebook");
        }
        detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + ": " +
                  row.avg_code_len.decimal() + " >= " + std::to_string(n);
    }
    return c.done(detail);
}

Outcome ground_truth_n4() {
    Check c;
    // Independent route first: iterative deepening per value.
    std::vector<unsigned> oracle;
    std::uint64_t oracle_sum = 0;
    std::map<unsigned, std::uint64_t> oracle_hist;
    for (std::uint64_t m = 0; m < 16; ++m) {
        oracle.push_back(solve_single(dbns(), m).kstar);
        oracle_sum += oracle.back();
        ++oracle_hist[oracle.back()];
    }
    const std::map<unsigned, std::uint64_t> expected_hist{{0, 1}, {1, 8}, {2, 7}};
    c.require(oracle_sum == 22, "oracle sum " + std::to_string(oracle_sum));
    c.require(oracle_hist == expected_hist, "oracle histogram differs");

    const OptimalTable table = solve_batch(dbns(), 4);
    const StatsRow row = compute_row(table);
    c.require(row.a_star == DyadicAverage{22, 16}, "A*(4) = " + row.a_star.decimal());
    c.require(row.a_star.decimal() == "1.375000", "A*(4) decimal");
    c.require(kstar_histogram(table) == expected_hist, "kstar_histogram(4) differs");
    for (std::uint64_t m = 0; m < 16; ++m) c.require(table[m] == oracle[m], "DP and oracle differ at m=" + std::to_string(m));
    return c.done("A*(4) = 22/16 = 1.375, histogram {0:1, 1:8, 2:7}");
}

Outcome greedy_properties() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const unsigned n = 16;
    const OptimalTable table = solve_batch(dbns(), n);
    const TermTable terms = enumerate_terms(dbns(), (1u << n) - 1);
    for (std::uint64_t m = 0; m < table.size() && c.ok(); ++m) {
        const GreedyResult g = greedy(terms, m);
        const std::string at = " at m=" + std::to_string(m);
        c.require(g.rep.is_canonical(), "terms not strictly decreasing" + at);
        c.require(evaluate(g.rep) == m, "terms do not sum to m" + at);
        if (m >= 1) c.require(g.kprime <= static_cast<unsigned>(std::bit_width(m)), "k' > floor(lg m) + 1" + at);
        c.require(table[m] <= g.kprime, "k* > k'" + at);
    }
    const double secs = seconds_since(t0);
    c.require(secs < 30.0, "took " + std::to_string(secs) + " s (limit 30 s)");
    return c.done("65536 values checked in " + std::to_string(secs) + " s");
}

std::vector<std::vector<unsigned>> full_trees(unsigned leaves) {
    if (leaves == 1) return {{0}};
    std::vector<std::vector<unsigned>> out;
    for (unsigned left = 1; left < leaves; ++left) {
        for (const auto& l : full_trees(left)) {
            for (const auto& r : full_trees(leaves - left)) {
                std::vector<unsigned> depths;
                for (unsigned d : l) depths.push_back(d + 1);
                for (unsigned d : r) depths.push_back(d + 1);
                out.push_back(std::move(depths));
            }
        }
    }
    return out;
}

Outcome huffman_optimality() {
    Check c;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> unit(1e-3, 1.0);
    std::vector<std::vector<std::vector<unsigned>>> trees(7);
    for (unsigned k = 1; k <= 6; ++k) trees[k] = full_trees(k);

    std::uint64_t codes_compared = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const unsigned count = 1 + static_cast<unsigned>(rng() % 6);
        std::vector<double> w(count);
        double sum = 0;
        for (auto& x : w) sum += (x = unit(rng));
        for (auto& x : w) x /= sum;
        const Distribution p = Distribution::make(w, 1e-9);
        const HuffmanCode code = huffman(p);
        const double len = expected_length(p, code.lengths);
        c.require(verify_prefix_free(code.words).prefix_free, "Huffman output not prefix-free");

        for (auto depths : trees[count]) {
            std::sort(depths.begin(), depths.end());
            do {
                ++codes_compared;
                if (len > expected_length(p, depths) + 1e-12) c.require(false, "a tree code beats Huffman");
            } while (std::next_permutation(depths.begin(), depths.end()));
        }
        const double h = entropy(p);
        c.require(h <= len + 1e-9 && len < h + 1 + 1e-9, "entropy bound violated");
    }
    return c.done("200 distributions, " + std::to_string(codes_compared) + " tree codes compared");
}

Outcome performance_n20() {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    const OptimalTable table = solve_batch(dbns(), 20);
    const double solve_secs = seconds_since(t0);
    const StatsRow row = compute_row(table);
    c.require(table.size() == 1048576, "table size");
    c.require(solve_secs < 60.0, "solve took " + std::to_string(solve_secs) + " s (limit 60 s)");
    c.require(row.avg_code_len.num >= 20 * row.avg_code_len.den, "average code length below 20");
    c.require(row.a_star.num <= row.a_prime.num, "A* > A'");
    c.require(check_row(row).empty(), "row invariants");
    return c.done("solved 2^20 values in " + std::to_string(solve_secs) + " s; A*(20) = " + row.a_star.decimal() +
                  ", A'(20) = " + row.a_prime.decimal() + ", avg len " + row.avg_code_len.decimal());
}

Outcome storage_roundtrip() {
    Check c;
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("dbnslab_accept_" + std::to_string(rd()));
    fs::create_directories(dir);
    for (unsigned n : {1u, 4u, 12u}) {
        const OptimalTable table = solve_batch(dbns(), n);
        const fs::path p = dir / cache_file_name(dbns(), n);
        save_table(table, p);
        const std::uint64_t expected = 4 + 1 + 1 + 8 + 1 + 4 + 1 + (std::uint64_t{1} << n);
        c.require(fs::file_size(p) == expected, "file size at n=" + std::to_string(n));
        c.require(load_table(p) == table, "roundtrip at n=" + std::to_string(n));
    }
    c.require(fs::file_size(dir / cache_file_name(dbns(), 4)) == 36, "n=4 file is not 36 bytes");
    std::error_code ec;
    fs::remove_all(dir, ec);
    return c.done("n = 1, 4, 12 roundtrip; sizes 22, 36, 4118 bytes");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 oracle equivalence (n=12)", oracle_equivalence},
        {"2 worked example m=15", worked_example_15},
        {"3 uniform Huffman lengths", uniform_huffman},
        {"4 prefix code at n=12", codebook_n12},
        {"5 average code length >= n", code_length_bound},
        {"6 ground truth at n=4", ground_truth_n4},
        {"7 greedy properties (n=16)", greedy_properties},
        {"8 Huffman optimality", huffman_optimality},
        {"9 batch performance (n=20)", performance_n20},
        {"10 storage roundtrip", storage_roundtrip},
    };

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", out.ok ? "PASS" : "FAIL", name.c_str(), out.detail.c_str());
        std::fflush(stdout);
        failed += out.ok ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
