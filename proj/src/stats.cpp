#include "dbnslab/stats.hpp"

#include "dbnslab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dbnslab {

std::string DyadicAverage::decimal(unsigned places) const {
    unsigned __int128 scale = 1;
    for (unsigned i = 0; i < places; ++i) scale *= 10;
    const unsigned __int128 scaled = (static_cast<unsigned __int128>(num) * scale * 2 + den) / (2 * static_cast<unsigned __int128>(den));
    const auto whole = static_cast<std::uint64_t>(scaled / scale);
    auto frac = static_cast<std::uint64_t>(scaled % scale);
    std::string out = std::to_string(whole);
    if (places > 0) {
        std::string digits = std::to_string(frac);
        out += '.' + std::string(places - digits.size(), '0') + digits;
    }
    return out;
}

StatsRow compute_row(const OptimalTable& table) {
    const unsigned n = table.n();
    const auto kprime = greedy_counts(table.system(), n, n);
    const auto kstar = table.kstar();

    std::uint64_t sum_star = 0;
    std::uint64_t sum_prime = 0;
    unsigned max_star = 0;
    unsigned max_prime = 0;
    for (std::size_t m = 0; m < kstar.size(); ++m) {
        sum_star += kstar[m];
        sum_prime += kprime[m];
        max_star = std::max<unsigned>(max_star, kstar[m]);
        max_prime = std::max<unsigned>(max_prime, kprime[m]);
    }

    StatsRow row;
    row.n = n;
    row.system = table.system().describe();
    row.layout = make_layout(n, table.system());
    const std::uint64_t den = table.size();
    row.a_star = {sum_star, den};
    row.a_prime = {sum_prime, den};
    row.avg_code_len = {row.layout.w_k * den + sum_star * row.layout.group_width(), den};
    row.lower_bound = n;
    row.max_kstar = max_star;
    row.max_kprime = max_prime;
    row.ratio = row.a_star.to_double() * std::log2(static_cast<double>(n)) / n;
    return row;
}

StatsRow compute_row(const BaseSystem& system, unsigned n, unsigned cap) {
    return compute_row(solve_batch(system, n, cap));
}

std::vector<std::string> check_row(const StatsRow& row) {
    std::vector<std::string> failures;
    const std::string at = " at n=" + std::to_string(row.n);
    if (row.a_star.den != row.a_prime.den || row.a_star.num > row.a_prime.num) failures.push_back("A* > A'" + at);

    using i128 = __int128;
    if (static_cast<i128>(row.avg_code_len.num) < static_cast<i128>(row.lower_bound) * row.avg_code_len.den) {
        failures.push_back("average code length below n" + at);
    }
    // A* >= (n - w_k) / (w_d + q w_e), cross-multiplied.
    const i128 lhs = static_cast<i128>(row.a_star.num) * row.layout.group_width();
    const i128 rhs = (static_cast<i128>(row.n) - row.layout.w_k) * static_cast<i128>(row.a_star.den);
    if (lhs < rhs) failures.push_back("A* below (n - w_k) / (w_d + q w_e)" + at);
    return failures;
}

std::vector<StatsRow> bound_table(const BaseSystem& system, std::vector<unsigned> n_list, unsigned cap) {
    require_solvable(system);
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    for (unsigned n : n_list) {
        if (n == 0 || n > std::min(cap, kHardSolverCap)) {
            throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
        }
    }
    std::vector<StatsRow> rows;
    rows.reserve(n_list.size());
    for (unsigned n : n_list) rows.push_back(compute_row(system, n, cap));
    return rows;
}

std::map<unsigned, std::uint64_t> kstar_histogram(const OptimalTable& table) {
    std::map<unsigned, std::uint64_t> hist;
    for (std::uint8_t k : table.kstar()) ++hist[k];
    return hist;
}

namespace {

std::string ratio_text(double ratio) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", ratio);
    return buf;
}

}  // namespace

std::string format_csv_row(const StatsRow& row) {
    std::ostringstream out;
    out << row.n << ',' << row.a_star.num << ',' << row.a_star.den << ',' << row.a_prime.num << ','
        << row.a_prime.den << ',' << row.avg_code_len.num << ',' << row.avg_code_len.den << ',' << row.lower_bound
        << ',' << row.max_kstar << ',' << row.max_kprime << ',' << ratio_text(row.ratio);
    return out.str();
}

std::string rows_to_csv(std::span<const StatsRow> rows) {
    if (rows.empty()) return {};
    std::string out = std::string(kStatsCsvHeader) + '\n';
    for (const auto& row : rows) out += format_csv_row(row) + '\n';
    return out;
}

std::string rows_to_json(std::span<const StatsRow> rows) {
    if (rows.empty()) return {};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        arr.push_back({
            {"n", row.n},
            {"A_star_num", row.a_star.num},
            {"A_star_den", row.a_star.den},
            {"A_prime_num", row.a_prime.num},
            {"A_prime_den", row.a_prime.den},
            {"avg_code_len_num", row.avg_code_len.num},
            {"avg_code_len_den", row.avg_code_len.den},
            {"lower_bound", row.lower_bound},
            {"max_kstar", row.max_kstar},
            {"max_kprime", row.max_kprime},
            {"ratio", std::stod(ratio_text(row.ratio))},
        });
    }
    return arr.dump(2) + '\n';
}

std::string format_text_row(const StatsRow& row) {
    std::ostringstream out;
    out << "n=" << row.n << " A*=" << row.a_star.num << '/' << row.a_star.den << " (" << row.a_star.decimal() << ")"
        << " A'=" << row.a_prime.num << '/' << row.a_prime.den << " (" << row.a_prime.decimal() << ")"
        << " avg_code_len=" << row.avg_code_len.num << '/' << row.avg_code_len.den << " ("
        << row.avg_code_len.decimal() << ") >= " << row.lower_bound << " max_k*=" << row.max_kstar
        << " max_k'=" << row.max_kprime << " ratio=" << ratio_text(row.ratio);
    return out.str();
}

}  // namespace dbnslab
