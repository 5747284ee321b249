#include "dbnslab/error.hpp"

namespace dbnslab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::InvalidBase: return "InvalidBase";
        case ErrorCode::InvalidDigit: return "InvalidDigit";
        case ErrorCode::UnsupportedSystem: return "UnsupportedSystem";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::DuplicateTerm: return "DuplicateTerm";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::FieldOverflow: return "FieldOverflow";
        case ErrorCode::Truncated: return "Truncated";
        case ErrorCode::TrailingBits: return "TrailingBits";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::BadVersion: return "BadVersion";
        case ErrorCode::Corrupt: return "Corrupt";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace dbnslab
