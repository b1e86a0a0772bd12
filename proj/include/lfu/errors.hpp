#pragma once

#include <stdexcept>
#include <string>

namespace lfu {

enum class ErrorCode {
    SyntaxError,
    NonSimplePath,
    NodeSetMismatch,
    EndpointMismatch,
    UnknownNode,
    NotPending,
    NotAForest,
    TooManyLeaves,
    NotInitialState,
    CapExceeded,
    TimeBudgetExceeded,
    InfeasibleInstance,
    InvalidSchedule,
    InvalidArgument,
    IoError,
    NoSafeNode,
    UnsafeRound,
    CorrespondenceViolation,
    Internal,
};

const char* error_code_name(ErrorCode code);

// Process exit code for the CLI: 1 input, 2 safety, 3 solver limit, 4 internal.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lfu
