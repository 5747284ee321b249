#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dbnslab {

enum class ErrorCode {
    NotCoprime,
    InvalidBase,
    InvalidDigit,
    UnsupportedSystem,
    Overflow,
    DuplicateTerm,
    CapExceeded,
    OutOfRange,
    FieldOverflow,
    Truncated,
    TrailingBits,
    InvalidDistribution,
    BadMagic,
    BadVersion,
    Corrupt,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dbnslab
