#pragma once
#include <stdexcept>
#include <string>

namespace drw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct CompositionNonzero : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct LengthTooShort : Error { using Error::Error; };
struct LevelTooSmall : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };
struct MalformedExpression : Error { using Error::Error; };
struct ZeroDivisor : Error { using Error::Error; };
struct LiftMismatch : Error { using Error::Error; };
struct NotExpressible : Error { using Error::Error; };
struct ConfigParse : Error { using Error::Error; };
struct IOFailure : Error { using Error::Error; };
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

} // namespace drw
