#include "rtm/core/error.hpp"

namespace rtm {

const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::InvalidSpec: return "InvalidSpec";
        case ErrorCategory::ConfigError: return "ConfigError";
        case ErrorCategory::MeshFailure: return "MeshFailure";
        case ErrorCategory::MissingProperties: return "MissingProperties";
        case ErrorCategory::SingularElement: return "SingularElement";
        case ErrorCategory::SolverDiverged: return "SolverDiverged";
        case ErrorCategory::NotConverged: return "NotConverged";
        case ErrorCategory::NotStationary: return "NotStationary";
        case ErrorCategory::ResolutionGateFailed: return "ResolutionGateFailed";
        case ErrorCategory::ZeroWeight: return "ZeroWeight";
        case ErrorCategory::IOFailure: return "IOFailure";
        case ErrorCategory::SchemaMismatch: return "SchemaMismatch";
        case ErrorCategory::GroupUndefined: return "GroupUndefined";
        case ErrorCategory::DimensionMismatch: return "DimensionMismatch";
        case ErrorCategory::DegenerateTraining: return "DegenerateTraining";
        case ErrorCategory::LengthMismatch: return "LengthMismatch";
        case ErrorCategory::UndefinedMetric: return "UndefinedMetric";
    }
    return "Unknown";
}

// Exit codes documented in the README; 1 is reserved for unexpected failures.
int category_exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::InvalidSpec:
        case ErrorCategory::ConfigError: return 2;
        case ErrorCategory::MeshFailure:
        case ErrorCategory::SingularElement: return 3;
        case ErrorCategory::SolverDiverged:
        case ErrorCategory::NotConverged:
        case ErrorCategory::NotStationary:
        case ErrorCategory::ResolutionGateFailed:
        case ErrorCategory::ZeroWeight: return 4;
        case ErrorCategory::IOFailure: return 5;
        case ErrorCategory::SchemaMismatch: return 6;
        case ErrorCategory::GroupUndefined:
        case ErrorCategory::DimensionMismatch:
        case ErrorCategory::DegenerateTraining:
        case ErrorCategory::LengthMismatch:
        case ErrorCategory::UndefinedMetric: return 7;
    }
    return 1;
}

}  // namespace rtm
