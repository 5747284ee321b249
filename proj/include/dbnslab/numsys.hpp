#pragma once

// Multi-base number systems: base/digit sets, terms d * b_1^e_1 * ... * b_q^e_q,
// representations as sums of terms, and the sorted table of all terms below a limit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dbnslab {

/// Every value handled by the library lies in [0, kValueBound).
inline constexpr std::uint64_t kValueBound = std::uint64_t{1} << 62;

class BaseSystem {
public:
    const std::vector<std::uint64_t>& bases() const noexcept { return bases_; }
    const std::vector<std::uint64_t>& digits() const noexcept { return digits_; }
    std::size_t q() const noexcept { return bases_.size(); }

    bool has_base(std::uint64_t b) const noexcept;
    bool has_digit(std::uint64_t d) const noexcept;
    std::optional<std::size_t> digit_index(std::uint64_t d) const noexcept;

    /// Compact text form, e.g. "bases=2,3 digits=1".
    std::string describe() const;

    bool operator==(const BaseSystem&) const = default;

    friend BaseSystem make_base_system(std::span<const std::uint64_t>, std::span<const std::uint64_t>);

private:
    BaseSystem(std::vector<std::uint64_t> bases, std::vector<std::uint64_t> digits)
        : bases_(std::move(bases)), digits_(std::move(digits)) {}

    std::vector<std::uint64_t> bases_;
    std::vector<std::uint64_t> digits_;
};

/// Sorts and deduplicates both lists. Bases must be >= 2 and pairwise coprime,
/// digits >= 1; both fit in 32 bits (the cache format stores them that way).
BaseSystem make_base_system(std::span<const std::uint64_t> bases, std::span<const std::uint64_t> digits);

/// The canonical double-base system: bases (2, 3), digits {1}.
BaseSystem dbns();

class Term {
public:
    /// Throws InvalidDigit, OutOfRange (wrong exponent count) or Overflow.
    static Term make(const BaseSystem& system, std::uint64_t digit, std::vector<std::uint32_t> exponents);

    std::uint64_t digit() const noexcept { return digit_; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exponents_; }
    std::uint64_t value() const noexcept { return value_; }

    /// "2^2*3^1", prefixed by "d*" when the digit is not 1 or `show_digit` is set.
    std::string describe(const BaseSystem& system, bool show_digit = false) const;

    bool operator==(const Term&) const = default;

private:
    Term(std::uint64_t digit, std::vector<std::uint32_t> exponents, std::uint64_t value)
        : digit_(digit), exponents_(std::move(exponents)), value_(value) {}

    std::uint64_t digit_;
    std::vector<std::uint32_t> exponents_;
    std::uint64_t value_;
};

/// A list of terms and the value they sum to. Term order is whatever the
/// caller supplied; canonicalize() produces strictly decreasing order.
class Representation {
public:
    Representation() = default;
    /// Throws Overflow if the sum leaves the value range.
    explicit Representation(std::vector<Term> terms);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    std::uint64_t value() const noexcept { return value_; }

    /// True when term values are strictly decreasing.
    bool is_canonical() const noexcept;

    bool operator==(const Representation&) const = default;

private:
    std::vector<Term> terms_;
    std::uint64_t value_ = 0;
};

/// Sum of the term values. Throws Overflow past kValueBound.
std::uint64_t evaluate(const Representation& rep);

/// Same terms ordered by strictly decreasing value; DuplicateTerm if two share a value.
Representation canonicalize(const Representation& rep);

struct TermWitness {
    std::uint32_t digit_index = 0;
    std::vector<std::uint32_t> exponents;
};

/// All distinct term values in [1, limit], ascending, each with one
/// (digit, exponents) witness. When several decompositions give the same
/// value the witness with the smallest digit is kept, ties broken by
/// lexicographically smallest exponent vector.
class TermTable {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::uint64_t limit() const noexcept { return limit_; }
    const BaseSystem& system() const noexcept { return system_; }
    const std::vector<std::uint64_t>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    const TermWitness& witness(std::size_t i) const { return witnesses_.at(i); }
    Term term(std::size_t i) const;

    std::size_t find(std::uint64_t value) const noexcept;
    bool contains(std::uint64_t value) const noexcept { return find(value) != npos; }
    /// Index of the largest value <= v, or npos.
    std::size_t largest_at_most(std::uint64_t v) const noexcept;

    friend TermTable enumerate_terms(const BaseSystem&, std::uint64_t);

private:
    TermTable(BaseSystem system, std::uint64_t limit) : limit_(limit), system_(std::move(system)) {}

    std::uint64_t limit_;
    BaseSystem system_;
    std::vector<std::uint64_t> values_;
    std::vector<TermWitness> witnesses_;
};

/// Throws OutOfRange if limit >= kValueBound.
TermTable enumerate_terms(const BaseSystem& system, std::uint64_t limit);

}  // namespace dbnslab
