#pragma once

#include <stdexcept>
#include <string>

namespace modsym {

enum class Errc {
    // order loading
    NotClosed,
    NotMonic,
    SingularBasis,
    NonSquarefreePoly,
    ReduciblePoly,
    // generic arithmetic
    DimensionMismatch,
    PrecisionUnavailable,
    // linear algebra
    NotSquare,
    Singular,
    DependentBasis,
    RadiusOverflow,
    // geometry
    BadSignature,
    FloorUndecidable,
    PointOffSurface,
    SingularMatrix,
    // search
    NotFound,
    NodeBudgetExceeded,
    BoxTooLarge,
    // reduction
    ZeroColumn,
    InvalidPivot,
    BoundTooSmall,
    CapExceeded,
    UnsupportedDimension,
    // certificates
    ParseError,
    FieldMismatch,
    SupportTooLarge,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotClosed: return "NotClosed";
        case Errc::NotMonic: return "NotMonic";
        case Errc::SingularBasis: return "SingularBasis";
        case Errc::NonSquarefreePoly: return "NonSquarefreePoly";
        case Errc::ReduciblePoly: return "ReduciblePoly";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::PrecisionUnavailable: return "PrecisionUnavailable";
        case Errc::NotSquare: return "NotSquare";
        case Errc::Singular: return "Singular";
        case Errc::DependentBasis: return "DependentBasis";
        case Errc::RadiusOverflow: return "RadiusOverflow";
        case Errc::BadSignature: return "BadSignature";
        case Errc::FloorUndecidable: return "FloorUndecidable";
        case Errc::PointOffSurface: return "PointOffSurface";
        case Errc::SingularMatrix: return "SingularMatrix";
        case Errc::NotFound: return "NotFound";
        case Errc::NodeBudgetExceeded: return "NodeBudgetExceeded";
        case Errc::BoxTooLarge: return "BoxTooLarge";
        case Errc::ZeroColumn: return "ZeroColumn";
        case Errc::InvalidPivot: return "InvalidPivot";
        case Errc::BoundTooSmall: return "BoundTooSmall";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::UnsupportedDimension: return "UnsupportedDimension";
        case Errc::ParseError: return "ParseError";
        case Errc::FieldMismatch: return "FieldMismatch";
        case Errc::SupportTooLarge: return "SupportTooLarge";
    }
    return "UnknownError";
}

} // namespace modsym
