#include "dbnslab/solver.hpp"

#include "dbnslab/error.hpp"

#include <algorithm>
#include <string>

namespace dbnslab {

namespace {

constexpr std::uint8_t kMaxStoredK = 62;

void check_n(unsigned n, unsigned cap) {
    if (n == 0) throw Error(ErrorCode::CapExceeded, "n must be at least 1");
    const unsigned limit = std::min(cap, kHardSolverCap);
    if (n > limit) {
        throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(n) + " exceeds the cap of " + std::to_string(limit));
    }
}

std::uint64_t pow2(unsigned n) { return std::uint64_t{1} << n; }

// Exactly `depth` strictly decreasing terms, all with index < bound, summing to residual.
bool search(const TermTable& terms, std::uint64_t residual, unsigned depth, std::size_t bound,
            std::vector<std::size_t>& chosen) {
    if (depth == 0) return residual == 0;
    if (residual == 0 || bound == 0) return false;

    std::size_t top = terms.largest_at_most(residual);
    if (top == TermTable::npos) return false;
    top = std::min(top, bound - 1);

    if (depth == 1) {
        std::size_t hit = terms.find(residual);
        if (hit == TermTable::npos || hit >= bound) return false;
        chosen.push_back(hit);
        return true;
    }

    // depth terms, each at most s, must reach the residual.
    const std::uint64_t needed = (residual + depth - 1) / depth;
    for (std::size_t i = top + 1; i-- > 0;) {
        const std::uint64_t s = terms.values()[i];
        if (s < needed) break;
        chosen.push_back(i);
        if (search(terms, residual - s, depth - 1, i, chosen)) return true;
        chosen.pop_back();
    }
    return false;
}

std::uint64_t table_limit(unsigned n) {
    if (n == 0 || n > kHardSolverCap) throw Error(ErrorCode::CapExceeded, "table size n out of range");
    return pow2(n) - 1;
}

}  // namespace

void require_solvable(const BaseSystem& system) {
    if (!system.has_base(2) || !system.has_digit(1)) {
        throw Error(ErrorCode::UnsupportedSystem, "solver needs 2 among the bases and 1 among the digits");
    }
}

OptimalTable::OptimalTable(BaseSystem system, unsigned n, std::vector<std::uint8_t> kstar)
    : n_(n), terms_(enumerate_terms(system, table_limit(n))), kstar_(std::move(kstar)) {
    if (kstar_.size() != pow2(n)) throw Error(ErrorCode::Corrupt, "k* array length is not 2^n");
    if (kstar_[0] != 0) throw Error(ErrorCode::Corrupt, "k*_0 must be 0");
    for (std::size_t m = 1; m < kstar_.size(); ++m) {
        if (kstar_[m] == 0 || kstar_[m] > kMaxStoredK) throw Error(ErrorCode::Corrupt, "k* entry out of range");
    }
}

OptimalTable solve_batch(const BaseSystem& system, unsigned n, unsigned cap) {
    require_solvable(system);
    check_n(n, cap);

    const std::uint64_t count = pow2(n);
    const TermTable terms = enumerate_terms(system, count - 1);
    const auto& values = terms.values();

    std::vector<std::uint8_t> dist(count, 0);
    std::size_t top = 0;  // values[top] is the largest term <= v
    for (std::uint64_t v = 1; v < count; ++v) {
        while (top + 1 < values.size() && values[top + 1] <= v) ++top;
        if (values[top] == v) {
            dist[v] = 1;
            continue;
        }
        // v is not a term, so 2 is the best possible.
        std::uint8_t best = 0xff;
        for (std::size_t i = top + 1; i-- > 0;) {
            const std::uint8_t d = dist[v - values[i]];
            if (d < best) {
                best = d;
                if (best == 1) break;
            }
        }
        dist[v] = static_cast<std::uint8_t>(best + 1);
    }
    return OptimalTable(system, n, std::move(dist));
}

SingleSolution solve_single(const BaseSystem& system, std::uint64_t m) {
    require_solvable(system);
    if (m >= kValueBound) throw Error(ErrorCode::OutOfRange, "value must be below 2^62");
    if (m == 0) return {};

    const TermTable terms = enumerate_terms(system, m);
    std::vector<std::size_t> chosen;
    // Binary is always available, so the loop ends by depth 62.
    for (unsigned k = 1; k <= 62; ++k) {
        chosen.clear();
        if (search(terms, m, k, terms.size(), chosen)) {
            std::vector<Term> picked;
            picked.reserve(chosen.size());
            for (auto i : chosen) picked.push_back(terms.term(i));
            return {k, Representation(std::move(picked))};
        }
    }
    throw Error(ErrorCode::OutOfRange, "no representation found within 62 terms");
}

GreedyResult greedy(const TermTable& terms, std::uint64_t m) {
    require_solvable(terms.system());
    if (m > terms.limit()) throw Error(ErrorCode::OutOfRange, "value exceeds the term table limit");

    std::vector<Term> picked;
    std::uint64_t residual = m;
    while (residual > 0) {
        const std::size_t i = terms.largest_at_most(residual);
        picked.push_back(terms.term(i));
        residual -= terms.values()[i];
    }
    const auto k = static_cast<unsigned>(picked.size());
    return {m, Representation(std::move(picked)), k};
}

GreedyResult greedy(const BaseSystem& system, std::uint64_t m) {
    require_solvable(system);
    if (m >= kValueBound) throw Error(ErrorCode::OutOfRange, "value must be below 2^62");
    return greedy(enumerate_terms(system, m), m);
}

std::vector<std::uint8_t> greedy_counts(const BaseSystem& system, unsigned n, unsigned cap) {
    require_solvable(system);
    check_n(n, cap);

    const std::uint64_t count = pow2(n);
    const TermTable terms = enumerate_terms(system, count - 1);
    const auto& values = terms.values();

    std::vector<std::uint8_t> kprime(count, 0);
    std::size_t top = 0;
    for (std::uint64_t v = 1; v < count; ++v) {
        while (top + 1 < values.size() && values[top + 1] <= v) ++top;
        kprime[v] = static_cast<std::uint8_t>(kprime[v - values[top]] + 1);
    }
    return kprime;
}

Representation extract_witness(const OptimalTable& table, std::uint64_t m) {
    if (m >= table.size()) throw Error(ErrorCode::OutOfRange, "value outside the table");

    const TermTable& terms = table.terms();
    const auto kstar = table.kstar();
    std::vector<Term> picked;
    std::uint64_t residual = m;
    std::size_t bound = terms.size();  // next term must have index < bound

    while (residual > 0) {
        if (bound == 0) throw Error(ErrorCode::Corrupt, "no optimal predecessor; table is inconsistent");
        const unsigned want = kstar[residual] - 1u;
        std::size_t top = std::min(terms.largest_at_most(residual), bound - 1);
        std::size_t hit = TermTable::npos;
        for (std::size_t i = top + 1; i-- > 0;) {
            if (kstar[residual - terms.values()[i]] == want) {
                hit = i;
                break;
            }
        }
        if (hit == TermTable::npos) throw Error(ErrorCode::Corrupt, "no optimal predecessor; table is inconsistent");
        picked.push_back(terms.term(hit));
        residual -= terms.values()[hit];
        bound = hit;
    }
    return Representation(std::move(picked));
}

}  // namespace dbnslab
