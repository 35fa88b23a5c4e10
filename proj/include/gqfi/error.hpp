#pragma once

#include <stdexcept>
#include <string>

namespace gqfi {

enum class ErrorKind {
    InvalidArgument,
    DimensionMismatch,
    UnphysicalState,
    SymplecticViolation,
    NumericInstability,
    DegeneratePair,
    SingularState,
    DegenerateSpectrum,
    LimitUndefined,
    CutoffTooSmall,
    TruncationError,
    UnsupportedInitialState,
    InsufficientTaylorData,
    WrongRegime,
    NotProvided,
    RegimeViolation,
    Io,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    const char* name() const { return error_name(kind_); }

private:
    ErrorKind kind_;
};

inline const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::DimensionMismatch: return "dimension-mismatch";
        case ErrorKind::UnphysicalState: return "unphysical-state";
        case ErrorKind::SymplecticViolation: return "symplectic-violation";
        case ErrorKind::NumericInstability: return "numeric-instability";
        case ErrorKind::DegeneratePair: return "degenerate-pair";
        case ErrorKind::SingularState: return "singular-state";
        case ErrorKind::DegenerateSpectrum: return "degenerate-spectrum";
        case ErrorKind::LimitUndefined: return "limit-undefined";
        case ErrorKind::CutoffTooSmall: return "cutoff-too-small";
        case ErrorKind::TruncationError: return "truncation-error";
        case ErrorKind::UnsupportedInitialState: return "unsupported-initial-state";
        case ErrorKind::InsufficientTaylorData: return "insufficient-taylor-data";
        case ErrorKind::WrongRegime: return "wrong-regime";
        case ErrorKind::NotProvided: return "not-provided";
        case ErrorKind::RegimeViolation: return "regime-violation";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace gqfi
