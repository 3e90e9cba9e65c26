#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fspv {

struct SourcePos {
    int line = 0;    // 1-based, 0 = unknown
    int column = 0;  // 1-based

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorCode {
    UnknownCharacter,
    SyntaxError,
    DuplicateDefinition,
    UnresolvedReference,
    UnboundVariable,
    DivisionByZero,
    TypeMismatch,
    RangeIndexOutOfBounds,
    StateLimitExceeded,
    NondeterministicProperty,
    CyclicRef,
    Io,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownCharacter: return "UnknownCharacter";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::DuplicateDefinition: return "DuplicateDefinition";
        case ErrorCode::UnresolvedReference: return "UnresolvedReference";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::RangeIndexOutOfBounds: return "RangeIndexOutOfBounds";
        case ErrorCode::StateLimitExceeded: return "StateLimitExceeded";
        case ErrorCode::NondeterministicProperty: return "NondeterministicProperty";
        case ErrorCode::CyclicRef: return "CyclicRef";
        case ErrorCode::Io: return "Io";
    }
    return "Error";
}

/// All library failures surface as one exception type carrying a code and,
/// where known, the source position of the offending token.
class FspError : public std::runtime_error {
public:
    FspError(ErrorCode code, std::string message, SourcePos pos = {})
        : std::runtime_error(format_message(code, message, pos)),
          code_(code),
          pos_(pos),
          detail_(std::move(message)) {}

    ErrorCode code() const { return code_; }
    SourcePos pos() const { return pos_; }
    const std::string& detail() const { return detail_; }

private:
    static std::string format_message(ErrorCode code, const std::string& message, SourcePos pos) {
        std::string out = error_code_name(code);
        if (pos.line > 0) {
            out += " at " + std::to_string(pos.line) + ":" + std::to_string(pos.column);
        }
        out += ": ";
        out += message;
        return out;
    }

    ErrorCode code_;
    SourcePos pos_;
    std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, std::string message, SourcePos pos = {}) {
    throw FspError(code, std::move(message), pos);
}

}  // namespace fspv
