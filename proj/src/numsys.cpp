#include "dbnslab/numsys.hpp"

#include "dbnslab/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace dbnslab {

namespace {

constexpr std::uint64_t kMaxField = std::numeric_limits<std::uint32_t>::max();

// a * b if the product stays <= bound, otherwise nullopt.
std::optional<std::uint64_t> mul_within(std::uint64_t a, std::uint64_t b, std::uint64_t bound) {
    if (a != 0 && b > bound / a) return std::nullopt;
    return a * b;
}

std::string join(const std::vector<std::uint64_t>& xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    return out.str();
}

}  // namespace

bool BaseSystem::has_base(std::uint64_t b) const noexcept {
    return std::binary_search(bases_.begin(), bases_.end(), b);
}

bool BaseSystem::has_digit(std::uint64_t d) const noexcept {
    return std::binary_search(digits_.begin(), digits_.end(), d);
}

std::optional<std::size_t> BaseSystem::digit_index(std::uint64_t d) const noexcept {
    auto it = std::lower_bound(digits_.begin(), digits_.end(), d);
    if (it == digits_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - digits_.begin());
}

std::string BaseSystem::describe() const {
    return "bases=" + join(bases_) + " digits=" + join(digits_);
}

BaseSystem make_base_system(std::span<const std::uint64_t> bases, std::span<const std::uint64_t> digits) {
    if (bases.empty()) throw Error(ErrorCode::InvalidBase, "base list is empty");
    if (digits.empty()) throw Error(ErrorCode::InvalidDigit, "digit list is empty");

    std::vector<std::uint64_t> bs(bases.begin(), bases.end());
    std::vector<std::uint64_t> ds(digits.begin(), digits.end());
    for (auto b : bs) {
        if (b < 2 || b > kMaxField) throw Error(ErrorCode::InvalidBase, "base " + std::to_string(b) + " outside [2, 2^32)");
    }
    for (auto d : ds) {
        if (d < 1 || d > kMaxField) throw Error(ErrorCode::InvalidDigit, "digit " + std::to_string(d) + " outside [1, 2^32)");
    }
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    if (ds.size() > 255 || bs.size() > 255) throw Error(ErrorCode::OutOfRange, "at most 255 bases and 255 digits");

    for (std::size_t i = 0; i < bs.size(); ++i) {
        for (std::size_t j = i + 1; j < bs.size(); ++j) {
            if (std::gcd(bs[i], bs[j]) != 1) {
                throw Error(ErrorCode::NotCoprime,
                            "bases " + std::to_string(bs[i]) + " and " + std::to_string(bs[j]) + " share a factor");
            }
        }
    }
    return BaseSystem(std::move(bs), std::move(ds));
}

BaseSystem dbns() {
    static const std::uint64_t bases[] = {2, 3};
    static const std::uint64_t digits[] = {1};
    return make_base_system(bases, digits);
}

Term Term::make(const BaseSystem& system, std::uint64_t digit, std::vector<std::uint32_t> exponents) {
    if (!system.has_digit(digit)) throw Error(ErrorCode::InvalidDigit, std::to_string(digit) + " is not in the digit set");
    if (exponents.size() != system.q()) {
        throw Error(ErrorCode::OutOfRange, "expected " + std::to_string(system.q()) + " exponents");
    }
    std::uint64_t value = digit;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
        for (std::uint32_t e = 0; e < exponents[j]; ++e) {
            auto next = mul_within(value, system.bases()[j], kValueBound - 1);
            if (!next) throw Error(ErrorCode::Overflow, "term value exceeds 2^62");
            value = *next;
        }
    }
    return Term(digit, std::move(exponents), value);
}

std::string Term::describe(const BaseSystem& system, bool show_digit) const {
    std::ostringstream out;
    if (show_digit || digit_ != 1) out << digit_ << '*';
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
        out << (j ? "*" : "") << system.bases()[j] << '^' << exponents_[j];
    }
    return out.str();
}

Representation::Representation(std::vector<Term> terms) : terms_(std::move(terms)) {
    value_ = evaluate(*this);
}

bool Representation::is_canonical() const noexcept {
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        if (terms_[i - 1].value() <= terms_[i].value()) return false;
    }
    return true;
}

std::uint64_t evaluate(const Representation& rep) {
    std::uint64_t sum = 0;
    for (const auto& t : rep.terms()) {
        if (t.value() >= kValueBound - sum) throw Error(ErrorCode::Overflow, "representation sum exceeds 2^62");
        sum += t.value();
    }
    return sum;
}

Representation canonicalize(const Representation& rep) {
    std::vector<Term> terms = rep.terms();
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.value() > b.value(); });
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i - 1].value() == terms[i].value()) {
            throw Error(ErrorCode::DuplicateTerm, "value " + std::to_string(terms[i].value()) + " appears twice");
        }
    }
    return Representation(std::move(terms));
}

Term TermTable::term(std::size_t i) const {
    const auto& w = witnesses_.at(i);
    return Term::make(system_, system_.digits()[w.digit_index], w.exponents);
}

std::size_t TermTable::find(std::uint64_t value) const noexcept {
    auto it = std::lower_bound(values_.begin(), values_.end(), value);
    if (it == values_.end() || *it != value) return npos;
    return static_cast<std::size_t>(it - values_.begin());
}

std::size_t TermTable::largest_at_most(std::uint64_t v) const noexcept {
    auto it = std::upper_bound(values_.begin(), values_.end(), v);
    if (it == values_.begin()) return npos;
    return static_cast<std::size_t>(it - values_.begin()) - 1;
}

TermTable enumerate_terms(const BaseSystem& system, std::uint64_t limit) {
    if (limit >= kValueBound) throw Error(ErrorCode::OutOfRange, "term limit must be below 2^62");
    TermTable table(system, limit);

    // Digits ascending, then depth-first over exponent vectors in
    // lexicographic order, so the first witness recorded for a value is the
    // preferred one.
    std::map<std::uint64_t, TermWitness> found;
    std::vector<std::uint32_t> exps(system.q(), 0);
    const auto& bases = system.bases();

    for (std::uint32_t di = 0; di < system.digits().size(); ++di) {
        const std::uint64_t digit = system.digits()[di];
        if (digit > limit) break;

        auto descend = [&](auto&& self, std::size_t j, std::uint64_t product) -> void {
            if (j == bases.size()) {
                found.try_emplace(product, TermWitness{di, exps});
                return;
            }
            std::uint64_t p = product;
            for (std::uint32_t e = 0;; ++e) {
                exps[j] = e;
                self(self, j + 1, p);
                auto next = mul_within(p, bases[j], limit);
                if (!next) break;
                p = *next;
            }
            exps[j] = 0;
        };
        descend(descend, 0, digit);
    }

    table.values_.reserve(found.size());
    table.witnesses_.reserve(found.size());
    for (auto& [value, witness] : found) {
        table.values_.push_back(value);
        table.witnesses_.push_back(std::move(witness));
    }
    return table;
}

}  // namespace dbnslab
