#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace planarmap {

/// Failure categories surfaced by the library. The CLI maps them onto exit
/// codes: resource failures exit with 3, every other named failure with 2.
enum class ErrorKind {
    DivisionByZero,
    DegreeTooLarge,
    InexactDivision,
    SingularSubstitution,
    Inconsistent,
    ResourceLimit,
    NotZeroDimensional,
    ShapeFailure,
    ChartFailure,
    NotPrincipal,
    NoAdjoint,
    DimensionMismatch,
    NotABranchingCurve,
    PointSearchExhausted,
    SingularPoint,
    DegenerateConfiguration,
    InterpolationDefect,
    NotNineCuspidalSextic,
    DualNotSmoothCubic,
    NoRationalRoot,
    NotGeneric,
    WrongDegree,
    WrongSingularityCount,
    VerificationFailed,
    ParseError,
    InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorKind::InexactDivision: return "InexactDivision";
        case ErrorKind::SingularSubstitution: return "SingularSubstitution";
        case ErrorKind::Inconsistent: return "Inconsistent";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::NotZeroDimensional: return "NotZeroDimensional";
        case ErrorKind::ShapeFailure: return "ShapeFailure";
        case ErrorKind::ChartFailure: return "ChartFailure";
        case ErrorKind::NotPrincipal: return "NotPrincipal";
        case ErrorKind::NoAdjoint: return "NoAdjoint";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotABranchingCurve: return "NotABranchingCurve";
        case ErrorKind::PointSearchExhausted: return "PointSearchExhausted";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
        case ErrorKind::InterpolationDefect: return "InterpolationDefect";
        case ErrorKind::NotNineCuspidalSextic: return "NotNineCuspidalSextic";
        case ErrorKind::DualNotSmoothCubic: return "DualNotSmoothCubic";
        case ErrorKind::NoRationalRoot: return "NoRationalRoot";
        case ErrorKind::NotGeneric: return "NotGeneric";
        case ErrorKind::WrongDegree: return "WrongDegree";
        case ErrorKind::WrongSingularityCount: return "WrongSingularityCount";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// True for failures caused by budgets or unlucky random draws rather than by
/// the input itself.
inline bool is_resource_failure(ErrorKind kind) {
    return kind == ErrorKind::ResourceLimit || kind == ErrorKind::PointSearchExhausted ||
           kind == ErrorKind::ShapeFailure || kind == ErrorKind::ChartFailure ||
           kind == ErrorKind::DegenerateConfiguration;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace planarmap
