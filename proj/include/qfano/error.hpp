#pragma once

#include <stdexcept>
#include <string>

namespace qfano {

enum class ErrorCode {
    InvalidInput,
    NotInvertible,
    NoSolution,
    InconsistentTorsion,
    UnsupportedIndex,
    VanishingNotApplicable,
    NoOrder,
    MalformedEquation,
    NoBound,
    UnknownAxiom,
    UnknownTable,
    MissingData,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qfano
