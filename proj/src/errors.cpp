#include "lfu/errors.hpp"

namespace lfu {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::NonSimplePath: return "NonSimplePath";
        case ErrorCode::NodeSetMismatch: return "NodeSetMismatch";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::NotPending: return "NotPending";
        case ErrorCode::NotAForest: return "NotAForest";
        case ErrorCode::TooManyLeaves: return "TooManyLeaves";
        case ErrorCode::NotInitialState: return "NotInitialState";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::TimeBudgetExceeded: return "TimeBudgetExceeded";
        case ErrorCode::InfeasibleInstance: return "InfeasibleInstance";
        case ErrorCode::InvalidSchedule: return "InvalidSchedule";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::NoSafeNode: return "NoSafeNode";
        case ErrorCode::UnsafeRound: return "UnsafeRound";
        case ErrorCode::CorrespondenceViolation: return "CorrespondenceViolation";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::SyntaxError:
        case ErrorCode::NonSimplePath:
        case ErrorCode::NodeSetMismatch:
        case ErrorCode::EndpointMismatch:
        case ErrorCode::UnknownNode:
        case ErrorCode::NotPending:
        case ErrorCode::NotInitialState:
        case ErrorCode::InfeasibleInstance:
        case ErrorCode::InvalidArgument:
        case ErrorCode::IoError:
            return 1;
        case ErrorCode::InvalidSchedule:
        case ErrorCode::CorrespondenceViolation:
            return 2;
        case ErrorCode::CapExceeded:
        case ErrorCode::TimeBudgetExceeded:
        case ErrorCode::NotAForest:
        case ErrorCode::TooManyLeaves:
            return 3;
        case ErrorCode::NoSafeNode:
        case ErrorCode::UnsafeRound:
        case ErrorCode::Internal:
            return 4;
    }
    return 4;
}

}  // namespace lfu
