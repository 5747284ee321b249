#pragma once

// Minimum-term representations (exact, batch and per value) and the greedy
// largest-term-first representation.
//
// All solver entry points require a system whose terms can express every
// natural number without repeating a term: 2 must be a base and 1 a digit.
// Given base 2, two equal terms t + t always merge into the single term 2t,
// so minimal and greedy representations are strictly decreasing.

#include "dbnslab/numsys.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace dbnslab {

inline constexpr unsigned kDefaultSolverCap = 24;
inline constexpr unsigned kHardSolverCap = 40;

/// Throws UnsupportedSystem unless 2 is a base and 1 a digit.
void require_solvable(const BaseSystem& system);

/// k*_m for every m < 2^n, one byte per value, plus the term table the DP used.
class OptimalTable {
public:
    /// Validates length (2^n) and that every entry is <= 62 with kstar[0] == 0.
    OptimalTable(BaseSystem system, unsigned n, std::vector<std::uint8_t> kstar);

    unsigned n() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return kstar_.size(); }
    const BaseSystem& system() const noexcept { return terms_.system(); }
    const TermTable& terms() const noexcept { return terms_; }
    std::span<const std::uint8_t> kstar() const noexcept { return kstar_; }
    std::uint8_t operator[](std::uint64_t m) const { return kstar_.at(m); }

    bool operator==(const OptimalTable& other) const {
        return n_ == other.n_ && system() == other.system() && kstar_ == other.kstar_;
    }

private:
    unsigned n_;
    TermTable terms_;
    std::vector<std::uint8_t> kstar_;
};

/// Shortest-sum DP over all v < 2^n in ascending order:
/// kstar[v] = 1 + min over terms s <= v of kstar[v - s].
/// Throws CapExceeded if n == 0 or n > cap.
OptimalTable solve_batch(const BaseSystem& system, unsigned n, unsigned cap = kDefaultSolverCap);

struct SingleSolution {
    unsigned kstar = 0;
    Representation rep;
};

/// Iterative deepening over strictly decreasing term choices. Does not share
/// any code path with solve_batch, so the two cross-check each other.
SingleSolution solve_single(const BaseSystem& system, std::uint64_t m);

struct GreedyResult {
    std::uint64_t value = 0;
    Representation rep;
    unsigned kprime = 0;
};

/// Repeatedly subtract the largest term <= residual.
GreedyResult greedy(const BaseSystem& system, std::uint64_t m);
/// Same, reusing a prebuilt table; m must not exceed terms.limit().
GreedyResult greedy(const TermTable& terms, std::uint64_t m);

/// k'_m for every m < 2^n via k'_m = 1 + k'_{m - s(m)}, s(m) the largest term <= m.
std::vector<std::uint8_t> greedy_counts(const BaseSystem& system, unsigned n, unsigned cap = kDefaultSolverCap);

/// Walks down from m picking, at each step, the largest term s below the
/// previous one with kstar[r - s] == kstar[r] - 1. Throws OutOfRange for m >= 2^n.
Representation extract_witness(const OptimalTable& table, std::uint64_t m);

}  // namespace dbnslab
