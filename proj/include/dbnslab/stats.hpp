#pragma once

#include "dbnslab/coding.hpp"
#include "dbnslab/solver.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dbnslab {

/// num / den with den = 2^n, kept unreduced.
struct DyadicAverage {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    /// Rounded half-up to `places` decimals, computed exactly.
    std::string decimal(unsigned places = 6) const;

    bool operator==(const DyadicAverage&) const = default;
};

struct StatsRow {
    unsigned n = 0;
    std::string system;
    FieldLayout layout;
    DyadicAverage a_star;
    DyadicAverage a_prime;
    DyadicAverage avg_code_len;
    unsigned lower_bound = 0;
    unsigned max_kstar = 0;
    unsigned max_kprime = 0;
    /// A* lg n / n with real-valued lg; display only.
    double ratio = 0.0;
};

/// Averages over all m < 2^n. The code length average comes from the length
/// formula w_k + k*_m (w_d + q w_e), not from materialized codewords.
StatsRow compute_row(const OptimalTable& table);
StatsRow compute_row(const BaseSystem& system, unsigned n, unsigned cap = kDefaultSolverCap);

/// Descriptions of every violated row invariant; empty when the row is sound.
/// Checks A* <= A', avg_code_len >= n, and A* >= (n - w_k) / (w_d + q w_e),
/// all in exact integer arithmetic.
std::vector<std::string> check_row(const StatsRow& row);

/// One row per distinct n, ascending. Every n is range-checked before any work.
std::vector<StatsRow> bound_table(const BaseSystem& system, std::vector<unsigned> n_list,
                                  unsigned cap = kDefaultSolverCap);

std::map<unsigned, std::uint64_t> kstar_histogram(const OptimalTable& table);

inline constexpr const char* kStatsCsvHeader =
    "n,A_star_num,A_star_den,A_prime_num,A_prime_den,avg_code_len_num,avg_code_len_den,lower_bound,max_kstar,"
    "max_kprime,ratio";

std::string format_csv_row(const StatsRow& row);
std::string rows_to_csv(std::span<const StatsRow> rows);
std::string rows_to_json(std::span<const StatsRow> rows);
std::string format_text_row(const StatsRow& row);

}  // namespace dbnslab
