#pragma once

#include <stdexcept>
#include <string>

namespace grassmod {

enum class Errc {
    NonPrimeModulus,
    NoIrreducibleFound,
    TooLarge,
    AmbientMismatch,
    DimensionMismatch,
    ShapeMismatch,
    EmptyOrbit,
    HypothesisViolated,
    NotDiagonalizable,
    EmptyModule,
    SpecInvalid,
    PreconditionViolated,
    NonSquare,
    UnknownCheck,
    BadParams,
    IOFailure,
    ChecksumMismatch,
    InternalError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPrimeModulus: return "NonPrimeModulus";
        case Errc::NoIrreducibleFound: return "NoIrreducibleFound";
        case Errc::TooLarge: return "TooLarge";
        case Errc::AmbientMismatch: return "AmbientMismatch";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::EmptyOrbit: return "EmptyOrbit";
        case Errc::HypothesisViolated: return "HypothesisViolated";
        case Errc::NotDiagonalizable: return "NotDiagonalizable";
        case Errc::EmptyModule: return "EmptyModule";
        case Errc::SpecInvalid: return "SpecInvalid";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NonSquare: return "NonSquare";
        case Errc::UnknownCheck: return "UnknownCheck";
        case Errc::BadParams: return "BadParams";
        case Errc::IOFailure: return "IOFailure";
        case Errc::ChecksumMismatch: return "ChecksumMismatch";
        case Errc::InternalError: return "InternalError";
    }
    return "?";
}

/// Library-wide exception type; carries a coded reason plus free-form detail.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace grassmod
