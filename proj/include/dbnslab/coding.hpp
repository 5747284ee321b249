#pragma once

// Bit strings, the fixed-width field code over minimal representations, and
// the prefix-code toolkit used to audit it (prefix check, Kraft sum, Huffman).

#include "dbnslab/numsys.hpp"
#include "dbnslab/solver.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dbnslab {

inline constexpr unsigned kDefaultCodebookCap = 16;

/// Packed bit string, most significant bit first.
class CodeWord {
public:
    CodeWord() = default;

    /// Accepts only '0' and '1'; anything else throws OutOfRange.
    static CodeWord parse(std::string_view text);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool operator[](std::size_t i) const noexcept { return (blocks_[i / 64] >> (63 - i % 64)) & 1u; }

    void push_back(bool bit);
    /// Appends the low `width` bits of value, most significant first.
    void append(std::uint64_t value, unsigned width);
    void append(const CodeWord& other);

    bool is_prefix_of(const CodeWord& other) const noexcept;
    std::string to_string() const;

    bool operator==(const CodeWord& other) const noexcept { return size_ == other.size_ && blocks_ == other.blocks_; }
    /// Lexicographic; a proper prefix orders first.
    std::strong_ordering operator<=>(const CodeWord& other) const noexcept;

private:
    std::size_t common_prefix(const CodeWord& other) const noexcept;

    std::vector<std::uint64_t> blocks_;
    std::size_t size_ = 0;
};

/// x as exactly w bits, zero-padded on the left. FieldOverflow if x >= 2^w.
CodeWord fixed_width(std::uint64_t x, unsigned w);

/// Smallest w with 2^w >= x (0 for x <= 1).
unsigned ceil_log2(std::uint64_t x) noexcept;

/// Field widths of the representation code for values below 2^n:
/// a w_k-bit term count, then per term a w_d-bit digit index and q exponents
/// of w_e bits each.
struct FieldLayout {
    unsigned n = 0;
    unsigned w_k = 0;
    unsigned w_e = 0;
    unsigned w_d = 0;
    unsigned q = 0;

    unsigned group_width() const noexcept { return w_d + q * w_e; }
    std::uint64_t length_for(std::uint64_t k) const noexcept { return w_k + k * group_width(); }

    bool operator==(const FieldLayout&) const = default;
};

/// w_k = ceil(lg(n+1)), w_e = max(1, ceil(lg n)), w_d = ceil(lg |digits|).
FieldLayout make_layout(unsigned n, const BaseSystem& system);

/// Count field followed by each term of the canonical minimal witness.
CodeWord encode(std::uint64_t m, const OptimalTable& table, const FieldLayout& layout);
CodeWord encode(const Representation& rep, const BaseSystem& system, const FieldLayout& layout);

Representation decode_representation(const CodeWord& bits, const BaseSystem& system, const FieldLayout& layout);
/// Must consume the input exactly: Truncated / TrailingBits otherwise.
std::uint64_t decode(const CodeWord& bits, const BaseSystem& system, const FieldLayout& layout);

struct CodeBook {
    unsigned n = 0;
    FieldLayout layout;
    std::vector<CodeWord> words;
};

/// words[m] = encode(m) for all m < 2^n. CapExceeded when n > cap.
CodeBook build_codebook(const OptimalTable& table, unsigned cap = kDefaultCodebookCap);

struct PrefixCheck {
    bool prefix_free = true;
    /// (index of the prefix, index of the word it prefixes) for the first violation found.
    std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// Sorts lexicographically and compares neighbours. Equal words count as a violation.
PrefixCheck verify_prefix_free(std::span<const CodeWord> words);
inline PrefixCheck verify_prefix_free(const CodeBook& book) { return verify_prefix_free(book.words); }

using Rational = boost::multiprecision::cpp_rational;

/// Exact sum of 2^-|c| over all words.
Rational kraft_sum(std::span<const CodeWord> words);
inline Rational kraft_sum(const CodeBook& book) { return kraft_sum(book.words); }

class Distribution {
public:
    /// Entries must be finite and >= 0 and sum to 1 within `tolerance`.
    static Distribution make(std::vector<double> p, double tolerance = 1e-12);
    static Distribution uniform(std::size_t count);

    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& p() const noexcept { return p_; }
    double operator[](std::size_t i) const noexcept { return p_[i]; }

private:
    explicit Distribution(std::vector<double> p) : p_(std::move(p)) {}
    std::vector<double> p_;
};

struct HuffmanCode {
    std::vector<unsigned> lengths;
    std::vector<CodeWord> words;
};

/// Merges the two lightest items repeatedly; ties broken by creation order
/// (leaves 0..N-1, then merged nodes in the order they are built). The first
/// item popped takes the 0 branch.
HuffmanCode huffman(const Distribution& dist);

double expected_length(const Distribution& dist, std::span<const unsigned> lengths);
/// Shannon entropy in bits; zero-probability symbols contribute nothing.
double entropy(const Distribution& dist);

/// Returns n after checking that Huffman on 2^n equiprobable symbols gives
/// every symbol exactly n bits. CapExceeded for n == 0 or n > cap.
unsigned min_average_length_uniform(unsigned n, unsigned cap = kDefaultCodebookCap);

}  // namespace dbnslab
