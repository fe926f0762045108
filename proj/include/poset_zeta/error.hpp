#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poset_zeta {

enum class ErrorCode {
    DuplicateLabel,
    UnknownLabel,
    CycleDetected,
    EmptyPoset,
    SubdivisionTooLarge,
    PoleAtOrigin,
    DivergentAtInfinity,
    IndexOutOfRange,
    BruteForceTooLarge,
    DimensionZero,
    DegreeZero,
    NoConvergence,
    ZeroEulerCharacteristic,
    RangeTooLarge,
    InvalidConfig,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::EmptyPoset: return "EmptyPoset";
    case ErrorCode::SubdivisionTooLarge: return "SubdivisionTooLarge";
    case ErrorCode::PoleAtOrigin: return "PoleAtOrigin";
    case ErrorCode::DivergentAtInfinity: return "DivergentAtInfinity";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BruteForceTooLarge: return "BruteForceTooLarge";
    case ErrorCode::DimensionZero: return "DimensionZero";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroEulerCharacteristic: return "ZeroEulerCharacteristic";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Resource caps (explicit subdivision, brute force, sieve range) are
/// distinguished from plain computation failures so the CLI can map them
/// to separate exit codes.
constexpr bool is_resource_cap(ErrorCode code) {
    return code == ErrorCode::SubdivisionTooLarge || code == ErrorCode::BruteForceTooLarge ||
           code == ErrorCode::RangeTooLarge;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace poset_zeta
