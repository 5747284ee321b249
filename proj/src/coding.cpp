#include "dbnslab/coding.hpp"

#include "dbnslab/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <tuple>

namespace dbnslab {

CodeWord CodeWord::parse(std::string_view text) {
    CodeWord word;
    for (char c : text) {
        if (c != '0' && c != '1') throw Error(ErrorCode::OutOfRange, "bit strings may only contain 0 and 1");
        word.push_back(c == '1');
    }
    return word;
}

void CodeWord::push_back(bool bit) {
    if (size_ % 64 == 0) blocks_.push_back(0);
    if (bit) blocks_.back() |= std::uint64_t{1} << (63 - size_ % 64);
    ++size_;
}

void CodeWord::append(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) push_back((value >> i) & 1u);
}

void CodeWord::append(const CodeWord& other) {
    for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

std::size_t CodeWord::common_prefix(const CodeWord& other) const noexcept {
    const std::size_t limit = std::min(size_, other.size_);
    const std::size_t blocks = (limit + 63) / 64;
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint64_t diff = blocks_[b] ^ other.blocks_[b];
        if (diff != 0) return std::min(limit, b * 64 + static_cast<std::size_t>(std::countl_zero(diff)));
    }
    return limit;
}

bool CodeWord::is_prefix_of(const CodeWord& other) const noexcept {
    return size_ <= other.size_ && common_prefix(other) == size_;
}

std::strong_ordering CodeWord::operator<=>(const CodeWord& other) const noexcept {
    const std::size_t cp = common_prefix(other);
    if (cp == size_ || cp == other.size_) return size_ <=> other.size_;
    return (*this)[cp] ? std::strong_ordering::greater : std::strong_ordering::less;
}

std::string CodeWord::to_string() const {
    std::string out;
    out.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i] ? '1' : '0');
    return out;
}

unsigned ceil_log2(std::uint64_t x) noexcept {
    if (x <= 1) return 0;
    return static_cast<unsigned>(std::bit_width(x - 1));
}

CodeWord fixed_width(std::uint64_t x, unsigned w) {
    if (w < 64 && x >> w != 0) {
        throw Error(ErrorCode::FieldOverflow, std::to_string(x) + " does not fit in " + std::to_string(w) + " bits");
    }
    CodeWord word;
    word.append(x, w);
    return word;
}

FieldLayout make_layout(unsigned n, const BaseSystem& system) {
    if (n == 0) throw Error(ErrorCode::OutOfRange, "layout needs n >= 1");
    FieldLayout layout;
    layout.n = n;
    layout.w_k = ceil_log2(std::uint64_t{n} + 1);
    layout.w_e = std::max(1u, ceil_log2(n));
    layout.w_d = ceil_log2(system.digits().size());
    layout.q = static_cast<unsigned>(system.q());
    return layout;
}

namespace {

void check_layout(const BaseSystem& system, const FieldLayout& layout) {
    if (layout.q != system.q() || layout.w_d != ceil_log2(system.digits().size())) {
        throw Error(ErrorCode::OutOfRange, "field layout does not match the base system");
    }
}

class BitReader {
public:
    explicit BitReader(const CodeWord& bits) : bits_(bits) {}

    std::uint64_t read(unsigned width) {
        if (bits_.size() - pos_ < width) throw Error(ErrorCode::Truncated, "input ends inside a field");
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits_[pos_++] ? 1u : 0u);
        return v;
    }

private:
    const CodeWord& bits_;
    std::size_t pos_ = 0;
};

}  // namespace

CodeWord encode(const Representation& rep, const BaseSystem& system, const FieldLayout& layout) {
    check_layout(system, layout);
    CodeWord word = fixed_width(rep.size(), layout.w_k);
    for (const Term& t : rep.terms()) {
        if (layout.w_d > 0) word.append(fixed_width(*system.digit_index(t.digit()), layout.w_d));
        for (std::uint32_t e : t.exponents()) word.append(fixed_width(e, layout.w_e));
    }
    return word;
}

CodeWord encode(std::uint64_t m, const OptimalTable& table, const FieldLayout& layout) {
    if (layout.n != table.n()) throw Error(ErrorCode::OutOfRange, "layout n differs from table n");
    return encode(extract_witness(table, m), table.system(), layout);
}

Representation decode_representation(const CodeWord& bits, const BaseSystem& system, const FieldLayout& layout) {
    check_layout(system, layout);
    BitReader reader(bits);
    const std::uint64_t k = reader.read(layout.w_k);
    const std::uint64_t expected = layout.length_for(k);
    if (bits.size() < expected) throw Error(ErrorCode::Truncated, "announced " + std::to_string(k) + " terms");
    if (bits.size() > expected) throw Error(ErrorCode::TrailingBits, "input continues past the last term");

    std::vector<Term> terms;
    terms.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        std::uint64_t digit_index = layout.w_d > 0 ? reader.read(layout.w_d) : 0;
        if (digit_index >= system.digits().size()) throw Error(ErrorCode::FieldOverflow, "digit index out of range");
        std::vector<std::uint32_t> exps(layout.q);
        for (auto& e : exps) e = static_cast<std::uint32_t>(reader.read(layout.w_e));
        terms.push_back(Term::make(system, system.digits()[digit_index], std::move(exps)));
    }
    return Representation(std::move(terms));
}

std::uint64_t decode(const CodeWord& bits, const BaseSystem& system, const FieldLayout& layout) {
    return decode_representation(bits, system, layout).value();
}

CodeBook build_codebook(const OptimalTable& table, unsigned cap) {
    if (table.n() > cap) {
        throw Error(ErrorCode::CapExceeded,
                    "codebook for n=" + std::to_string(table.n()) + " exceeds the cap of " + std::to_string(cap));
    }
    CodeBook book;
    book.n = table.n();
    book.layout = make_layout(table.n(), table.system());
    book.words.reserve(table.size());
    for (std::uint64_t m = 0; m < table.size(); ++m) book.words.push_back(encode(m, table, book.layout));
    return book;
}

PrefixCheck verify_prefix_free(std::span<const CodeWord> words) {
    std::vector<std::size_t> order(words.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(words[a], a) < std::tie(words[b], b);
    });
    // In lexicographic order any word that prefixes another also prefixes its
    // immediate successor, so adjacent pairs suffice.
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (words[order[i - 1]].is_prefix_of(words[order[i]])) {
            return {false, std::make_pair(order[i - 1], order[i])};
        }
    }
    return {};
}

Rational kraft_sum(std::span<const CodeWord> words) {
    if (words.empty()) return Rational(0);
    std::size_t max_len = 0;
    for (const auto& w : words) max_len = std::max(max_len, w.size());
    std::vector<std::uint64_t> per_length(max_len + 1, 0);
    for (const auto& w : words) ++per_length[w.size()];

    using boost::multiprecision::cpp_int;
    cpp_int numerator = 0;
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (per_length[len] != 0) numerator += cpp_int(per_length[len]) << (max_len - len);
    }
    return Rational(numerator, cpp_int(1) << max_len);
}

Distribution Distribution::make(std::vector<double> p, double tolerance) {
    if (p.empty()) throw Error(ErrorCode::InvalidDistribution, "no symbols");
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < 0.0) throw Error(ErrorCode::InvalidDistribution, "probabilities must be finite and >= 0");
        sum += x;
    }
    if (std::fabs(sum - 1.0) > tolerance) {
        throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
    }
    return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t count) {
    if (count == 0) throw Error(ErrorCode::InvalidDistribution, "no symbols");
    return Distribution(std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

HuffmanCode huffman(const Distribution& dist) {
    const std::size_t n = dist.size();
    struct Node {
        double weight;
        std::size_t zero;
        std::size_t one;
    };
    constexpr std::size_t kLeaf = static_cast<std::size_t>(-1);

    // Node ids double as the tie-breaking sequence numbers.
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({dist[i], kLeaf, kLeaf});
        queue.emplace(dist[i], i);
    }
    while (queue.size() > 1) {
        const auto [wa, a] = queue.top();
        queue.pop();
        const auto [wb, b] = queue.top();
        queue.pop();
        nodes.push_back({wa + wb, a, b});
        queue.emplace(wa + wb, nodes.size() - 1);
    }

    HuffmanCode code;
    code.lengths.assign(n, 0);
    code.words.assign(n, CodeWord{});
    std::vector<std::pair<std::size_t, CodeWord>> stack;
    stack.emplace_back(queue.top().second, CodeWord{});
    while (!stack.empty()) {
        auto [id, prefix] = std::move(stack.back());
        stack.pop_back();
        const Node& node = nodes[id];
        if (node.zero == kLeaf) {
            code.lengths[id] = static_cast<unsigned>(prefix.size());
            code.words[id] = std::move(prefix);
            continue;
        }
        CodeWord one = prefix;
        one.push_back(true);
        prefix.push_back(false);
        stack.emplace_back(node.one, std::move(one));
        stack.emplace_back(node.zero, std::move(prefix));
    }
    return code;
}

double expected_length(const Distribution& dist, std::span<const unsigned> lengths) {
    if (lengths.size() != dist.size()) throw Error(ErrorCode::OutOfRange, "one length per symbol expected");
    double total = 0.0;
    for (std::size_t i = 0; i < lengths.size(); ++i) total += dist[i] * lengths[i];
    return total;
}

double entropy(const Distribution& dist) {
    double h = 0.0;
    for (double p : dist.p()) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

unsigned min_average_length_uniform(unsigned n, unsigned cap) {
    if (n == 0 || n > cap) {
        throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
    }
    const HuffmanCode code = huffman(Distribution::uniform(std::size_t{1} << n));
    for (unsigned len : code.lengths) {
        if (len != n) throw Error(ErrorCode::Corrupt, "uniform Huffman code has a length other than n");
    }
    return n;
}

}  // namespace dbnslab
