// Typed error conditions shared by the series core, the solver and the C API.
#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorCode {
    NonMonomialLeadingTerm = 1,
    NonSquareLeadingTerm,
    IndistinctLeadingTerms,
    NonRationalLeadingCoefficient,
    PrecisionExhausted,
    SelectorOutOfRange,
    UnboundedSupport,
    NotEliminable,
    KernelNotCancelled,
    SingularSystem,
    NullvectorCheckFailed,
    UnknownSetMismatch,
    UnknownModel,
    DegenerateRegime,
    AllSystemsSingular,
    DivisibilityFailure,
    MalformedDocument,
    UsageError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace qwalk
