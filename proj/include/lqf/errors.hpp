#pragma once

#include <stdexcept>
#include <string>

namespace lqf {

enum class ErrorCode {
    ZeroElement,
    InsufficientPrecision,
    FieldMismatch,
    OddRank,
    DegenerateForm,
    DimMismatch,
    RankTooLarge,
    IsotropicVector,
    UnsupportedType,
    NotIntegral,
    EllNotPrime,
    EllZeroInField,
    WrongCharacteristic,
    Obstructed,
    PrecisionLoss,
    SnapFailure,
    NotStabilized,
    ParseError,
    InvalidArgument,
};

inline const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::OddRank: return "OddRank";
    case ErrorCode::DegenerateForm: return "DegenerateForm";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::IsotropicVector: return "IsotropicVector";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::EllNotPrime: return "EllNotPrime";
    case ErrorCode::EllZeroInField: return "EllZeroInField";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::Obstructed: return "Obstructed";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::SnapFailure: return "SnapFailure";
    case ErrorCode::NotStabilized: return "NotStabilized";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

} // namespace lqf
