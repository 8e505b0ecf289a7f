#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace udm {

enum class Errc {
    NotPrime,
    BadExponent,
    FieldTooLarge,
    NotPrimePower,
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    RankDeficient,
    Inconsistent,
    BadPoint,
    TooManyChannels,
    NotLowerTriangular,
    ZeroDiagonal,
    Singular,
    DegenerateNullVector,
    BadNormalization,
    BadTuple,
    BudgetExceeded,
    InsufficientSymbols,
    ParseError,
};

constexpr std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::BadExponent: return "BadExponent";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::BadPoint: return "BadPoint";
    case Errc::TooManyChannels: return "TooManyChannels";
    case Errc::NotLowerTriangular: return "NotLowerTriangular";
    case Errc::ZeroDiagonal: return "ZeroDiagonal";
    case Errc::Singular: return "Singular";
    case Errc::DegenerateNullVector: return "DegenerateNullVector";
    case Errc::BadNormalization: return "BadNormalization";
    case Errc::BadTuple: return "BadTuple";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InsufficientSymbols: return "InsufficientSymbols";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace udm
