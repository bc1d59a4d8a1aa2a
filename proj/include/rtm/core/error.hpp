#pragma once

#include <stdexcept>
#include <string>

namespace rtm {

// One error type for the whole library. The category is what the CLI maps to
// an exit code and prints in machine-readable form.
enum class ErrorCategory {
    InvalidSpec,
    ConfigError,
    MeshFailure,
    MissingProperties,
    SingularElement,
    SolverDiverged,
    NotConverged,
    NotStationary,
    ResolutionGateFailed,
    ZeroWeight,
    IOFailure,
    SchemaMismatch,
    GroupUndefined,
    DimensionMismatch,
    DegenerateTraining,
    LengthMismatch,
    UndefinedMetric,
};

const char* category_name(ErrorCategory c);
int category_exit_code(ErrorCategory c);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(std::string(category_name(category)) + ": " + message),
          category_(category) {}

    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

}  // namespace rtm
