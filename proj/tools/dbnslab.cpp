// dbnslab: command-line front end for the multi-base number system library.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or limit errors.

#include "dbnslab/coding.hpp"
#include "dbnslab/error.hpp"
#include "dbnslab/numsys.hpp"
#include "dbnslab/solver.hpp"
#include "dbnslab/stats.hpp"
#include "dbnslab/storage.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace dbnslab;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CliConfig {
    std::string bases = "2,3";
    std::string digits = "1";
    std::string format = "text";
    std::string cache_dir;
    unsigned cap = kDefaultSolverCap;
    int verbosity = 0;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + " out of range: '" + text + "'");
    }
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
    std::vector<std::uint64_t> out;
    if (text.empty()) return out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_u64(item, what));
    return out;
}

BaseSystem system_from(const CliConfig& cfg) {
    return make_base_system(parse_list(cfg.bases, "base"), parse_list(cfg.digits, "digit"));
}

std::optional<std::filesystem::path> cache_dir_from(const CliConfig& cfg) {
    return resolve_cache_dir(cfg.cache_dir.empty() ? std::nullopt : std::optional<std::string>(cfg.cache_dir));
}

class Timer {
public:
    Timer(const CliConfig& cfg, std::string label) : cfg_(cfg), label_(std::move(label)) {}
    ~Timer() {
        if (cfg_.verbosity == 0) return;
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        std::cerr << label_ << ": " << std::chrono::duration<double>(elapsed).count() << " s\n";
    }

private:
    const CliConfig& cfg_;
    std::string label_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string join_values(const Representation& rep) {
    std::string out;
    for (std::size_t i = 0; i < rep.size(); ++i) out += (i ? "," : "") + std::to_string(rep.terms()[i].value());
    return out;
}

std::string join_forms(const Representation& rep, const BaseSystem& system) {
    const bool show_digit = system.digits().size() > 1 || system.digits()[0] != 1;
    std::string out;
    for (std::size_t i = 0; i < rep.size(); ++i) out += (i ? "," : "") + rep.terms()[i].describe(system, show_digit);
    return out;
}

void print_representation(const CliConfig& cfg, const BaseSystem& system, std::uint64_t m, const char* k_name,
                          unsigned k, const Representation& rep) {
    if (cfg.format == "csv") {
        std::cout << "m," << k_name << ",terms,forms\n"
                  << m << ',' << k << ",\"" << join_values(rep) << "\",\"" << join_forms(rep, system) << "\"\n";
    } else if (cfg.format == "json") {
        json terms = json::array();
        for (const Term& t : rep.terms()) {
            terms.push_back({{"value", t.value()}, {"digit", t.digit()}, {"exponents", t.exponents()}});
        }
        std::cout << json{{"m", m}, {k_name, k}, {"terms", terms}}.dump(2) << '\n';
    } else {
        std::cout << "m=" << m << ' ' << k_name << '=' << k << " terms=" << join_values(rep)
                  << " forms=" << join_forms(rep, system) << '\n';
    }
}

int cmd_terms(const CliConfig& cfg, std::uint64_t limit) {
    const BaseSystem system = system_from(cfg);
    const TermTable table = enumerate_terms(system, limit);
    if (cfg.format == "csv") std::cout << "value,form\n";
    json arr = json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const Term t = table.term(i);
        if (cfg.format == "csv") {
            std::cout << t.value() << ',' << t.describe(system, true) << '\n';
        } else if (cfg.format == "json") {
            arr.push_back({{"value", t.value()}, {"digit", t.digit()}, {"exponents", t.exponents()}});
        } else {
            std::cout << t.value() << " = " << t.describe(system) << '\n';
        }
    }
    if (cfg.format == "json") std::cout << arr.dump(2) << '\n';
    return kExitOk;
}

int cmd_optimal(const CliConfig& cfg, std::uint64_t m) {
    const BaseSystem system = system_from(cfg);
    Timer timer(cfg, "optimal");
    const SingleSolution sol = solve_single(system, m);
    print_representation(cfg, system, m, "k*", sol.kstar, sol.rep);
    return kExitOk;
}

int cmd_greedy(const CliConfig& cfg, std::uint64_t m) {
    const BaseSystem system = system_from(cfg);
    const GreedyResult res = greedy(system, m);
    print_representation(cfg, system, m, "k'", res.kprime, res.rep);
    return kExitOk;
}

int cmd_batch(const CliConfig& cfg, unsigned n, bool dump) {
    const BaseSystem system = system_from(cfg);
    std::optional<OptimalTable> table;
    {
        Timer timer(cfg, "batch n=" + std::to_string(n));
        table.emplace(load_or_solve(system, n, cfg.cap, cache_dir_from(cfg)));
    }
    const auto hist = kstar_histogram(*table);
    std::uint64_t sum = 0;
    for (auto [k, c] : hist) sum += k * c;

    if (cfg.format == "csv") {
        if (dump) {
            std::cout << "m,kstar\n";
            for (std::uint64_t m = 0; m < table->size(); ++m) std::cout << m << ',' << unsigned((*table)[m]) << '\n';
        } else {
            std::cout << "k,count\n";
            for (auto [k, c] : hist) std::cout << k << ',' << c << '\n';
        }
    } else if (cfg.format == "json") {
        json h = json::object();
        for (auto [k, c] : hist) h[std::to_string(k)] = c;
        json out = {{"n", n}, {"system", system.describe()}, {"sum_kstar", sum}, {"histogram", h}};
        if (dump) out["kstar"] = std::vector<unsigned>(table->kstar().begin(), table->kstar().end());
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << "n=" << n << ' ' << system.describe() << " values=" << table->size() << " sum_k*=" << sum
                  << " max_k*=" << hist.rbegin()->first << '\n';
        for (auto [k, c] : hist) std::cout << "k=" << k << " count=" << c << '\n';
        if (dump) {
            for (std::uint64_t m = 0; m < table->size(); ++m) std::cout << m << ' ' << unsigned((*table)[m]) << '\n';
        }
    }
    return kExitOk;
}

int cmd_stats(const CliConfig& cfg, const std::string& n_list_text) {
    const BaseSystem system = system_from(cfg);
    std::vector<unsigned> n_list;
    for (auto v : parse_list(n_list_text, "n")) {
        if (v == 0 || v > std::min(cfg.cap, kHardSolverCap)) {
            throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(v) + " outside [1, " + std::to_string(cfg.cap) + "]");
        }
        n_list.push_back(static_cast<unsigned>(v));
    }
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

    const auto dir = cache_dir_from(cfg);
    std::vector<StatsRow> rows;
    for (unsigned n : n_list) {
        Timer timer(cfg, "stats n=" + std::to_string(n));
        rows.push_back(compute_row(load_or_solve(system, n, cfg.cap, dir)));
    }

    if (cfg.format == "csv") {
        std::cout << rows_to_csv(rows);
    } else if (cfg.format == "json") {
        std::cout << rows_to_json(rows);
    } else {
        for (const auto& row : rows) std::cout << format_text_row(row) << '\n';
    }

    int status = kExitOk;
    for (const auto& row : rows) {
        for (const auto& failure : check_row(row)) {
            std::cerr << "FAIL " << failure << '\n';
            status = kExitFailed;
        }
    }
    return status;
}

unsigned codebook_cap(const CliConfig& cfg) { return std::min(cfg.cap, kDefaultCodebookCap); }

void check_codebook_n(const CliConfig& cfg, unsigned n) {
    if (n == 0 || n > codebook_cap(cfg)) {
        throw Error(ErrorCode::CapExceeded,
                    "n=" + std::to_string(n) + " outside the codebook range [1, " + std::to_string(codebook_cap(cfg)) + "]");
    }
}

int cmd_encode(const CliConfig& cfg, std::uint64_t m, unsigned n) {
    const BaseSystem system = system_from(cfg);
    check_codebook_n(cfg, n);
    if (m >> n != 0) throw Error(ErrorCode::OutOfRange, std::to_string(m) + " is not below 2^" + std::to_string(n));
    const OptimalTable table = load_or_solve(system, n, cfg.cap, cache_dir_from(cfg));
    std::cout << encode(m, table, make_layout(n, system)).to_string() << '\n';
    return kExitOk;
}

int cmd_decode(const CliConfig& cfg, const std::string& bits, unsigned n) {
    const BaseSystem system = system_from(cfg);
    if (n == 0) throw Error(ErrorCode::OutOfRange, "n must be at least 1");
    std::cout << decode(CodeWord::parse(bits), system, make_layout(n, system)) << '\n';
    return kExitOk;
}

int cmd_verify(const CliConfig& cfg, unsigned n) {
    const BaseSystem system = system_from(cfg);
    check_codebook_n(cfg, n);
    const OptimalTable table = load_or_solve(system, n, cfg.cap, cache_dir_from(cfg));
    const CodeBook book = build_codebook(table, codebook_cap(cfg));

    int failures = 0;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        if (!ok) ++failures;
    };

    const PrefixCheck prefix = verify_prefix_free(book);
    std::string prefix_detail = std::to_string(book.words.size()) + " words";
    if (prefix.violation) {
        prefix_detail += ", word " + std::to_string(prefix.violation->first) + " prefixes word " +
                         std::to_string(prefix.violation->second);
    }
    report(prefix.prefix_free, "prefix-free", prefix_detail);

    std::uint64_t bad_roundtrip = 0;
    for (std::uint64_t m = 0; m < book.words.size(); ++m) {
        try {
            if (decode(book.words[m], system, book.layout) != m) ++bad_roundtrip;
        } catch (const Error&) {
            ++bad_roundtrip;
        }
    }
    report(bad_roundtrip == 0, "roundtrip", std::to_string(bad_roundtrip) + " mismatches over " +
                                                std::to_string(book.words.size()) + " values");

    const Rational kraft = kraft_sum(book);
    std::ostringstream kraft_text;
    kraft_text << "sum = " << kraft;
    report(kraft <= 1, "kraft", kraft_text.str());

    std::uint64_t total_bits = 0;
    for (const auto& w : book.words) total_bits += w.size();
    const DyadicAverage avg{total_bits, book.words.size()};
    report(total_bits >= std::uint64_t{n} * book.words.size(), "average-length",
           std::to_string(total_bits) + "/" + std::to_string(book.words.size()) + " = " + avg.decimal() +
               " >= " + std::to_string(n));

    std::mt19937_64 rng(0x5eed + n);
    std::uniform_int_distribution<std::uint64_t> pick(0, table.size() - 1);
    int mismatches = 0;
    for (int i = 0; i < 512; ++i) {
        const std::uint64_t m = pick(rng);
        if (solve_single(system, m).kstar != table[m]) ++mismatches;
    }
    report(mismatches == 0, "dp-vs-oracle", std::to_string(mismatches) + " mismatches over 512 sampled values");

    return failures == 0 ? kExitOk : kExitFailed;
}

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

int cmd_huffman(const std::string& dist_file, std::optional<unsigned> uniform_n) {
    std::optional<Distribution> dist;
    if (uniform_n) {
        if (*uniform_n == 0 || *uniform_n > kDefaultCodebookCap) {
            throw Error(ErrorCode::CapExceeded, "--uniform-n must lie in [1, " + std::to_string(kDefaultCodebookCap) + "]");
        }
        dist.emplace(Distribution::uniform(std::size_t{1} << *uniform_n));
    } else {
        std::ifstream in(dist_file);
        if (!in) throw UsageError("cannot open " + dist_file);
        std::vector<double> p;
        std::string token;
        while (in >> token) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size()) throw UsageError("not a number: '" + token + "'");
            p.push_back(v);
        }
        dist.emplace(Distribution::make(std::move(p), 1e-9));
    }

    const HuffmanCode code = huffman(*dist);
    std::cout << "lengths:";
    for (unsigned len : code.lengths) std::cout << ' ' << len;
    std::cout << "\nexpected_length: " << fixed6(expected_length(*dist, code.lengths)) << '\n'
              << "entropy: " << fixed6(entropy(*dist)) << '\n';

    if (uniform_n) {
        bool all_n = std::all_of(code.lengths.begin(), code.lengths.end(), [&](unsigned l) { return l == *uniform_n; });
        std::cout << (all_n ? "PASS" : "FAIL") << " uniform: every length equals " << *uniform_n << '\n';
        return all_n ? kExitOk : kExitFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-base number system laboratory: minimal and greedy representations, term-count averages, "
                 "and prefix-code audits."};
    app.require_subcommand(1);
    app.fallthrough();

    CliConfig cfg;
    app.add_option("--bases", cfg.bases, "Comma-separated pairwise coprime bases")->capture_default_str();
    app.add_option("--digits", cfg.digits, "Comma-separated positive digits")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "Directory for k* cache files (default: $DBNSLAB_CACHE_DIR)");
    app.add_option("--cap", cfg.cap, "Largest n the solver accepts")->capture_default_str();
    app.add_flag("-v,--verbose", cfg.verbosity, "Report timings on stderr");

    std::uint64_t limit = 0;
    auto* terms = app.add_subcommand("terms", "List all terms up to a limit");
    terms->add_option("--limit", limit, "Largest term value")->required();

    std::string m_text;
    auto* optimal = app.add_subcommand("optimal", "Minimal representation of m");
    optimal->add_option("m", m_text)->required();
    auto* greedy_cmd = app.add_subcommand("greedy", "Greedy representation of m");
    greedy_cmd->add_option("m", m_text)->required();

    unsigned n = 0;
    bool dump = false;
    auto* batch = app.add_subcommand("batch", "Compute (and cache) k* for all m < 2^n");
    batch->add_option("--n", n)->required();
    batch->add_flag("--dump", dump, "Also print every k* value");

    std::string n_list;
    auto* stats = app.add_subcommand("stats", "Average term counts and code-length bounds per n");
    stats->add_option("--n-list", n_list, "Comma-separated n values")->required();

    auto* encode_cmd = app.add_subcommand("encode", "Codeword of m");
    encode_cmd->add_option("m", m_text)->required();
    encode_cmd->add_option("--n", n)->required();

    std::string bits;
    auto* decode_cmd = app.add_subcommand("decode", "Value of a codeword");
    decode_cmd->add_option("bits", bits)->required();
    decode_cmd->add_option("--n", n)->required();

    auto* verify = app.add_subcommand("verify", "Audit the codebook for one n");
    verify->add_option("--n", n)->required();

    std::string dist_file;
    unsigned uniform_n = 0;
    auto* huff = app.add_subcommand("huffman", "Huffman code lengths for a distribution");
    auto* dist_opt = huff->add_option("--dist", dist_file, "File of whitespace-separated probabilities");
    auto* uni_opt = huff->add_option("--uniform-n", uniform_n, "Uniform distribution over 2^N symbols");
    dist_opt->excludes(uni_opt);
    huff->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*terms) return cmd_terms(cfg, limit);
        if (*optimal) return cmd_optimal(cfg, parse_u64(m_text, "m"));
        if (*greedy_cmd) return cmd_greedy(cfg, parse_u64(m_text, "m"));
        if (*batch) return cmd_batch(cfg, n, dump);
        if (*stats) return cmd_stats(cfg, n_list);
        if (*encode_cmd) return cmd_encode(cfg, parse_u64(m_text, "m"), n);
        if (*decode_cmd) return cmd_decode(cfg, bits, n);
        if (*verify) return cmd_verify(cfg, n);
        if (*huff) return cmd_huffman(dist_file, *uni_opt ? std::optional<unsigned>(uniform_n) : std::nullopt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
