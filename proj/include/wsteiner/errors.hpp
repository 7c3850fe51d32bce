#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wsteiner {

enum class ErrorCode {
    DegenerateEdge,
    ParallelEdges,
    InfeasibleWeights,
    NoConvergence,
    NodeOffSegment,
    UndefinedTwist,
    DegenerateConfiguration,
    InconsistentSolution,
    InvalidInput,
    UnsupportedFormat,
};

std::string_view to_string(ErrorCode code);

class SolverError : public std::runtime_error {
public:
    SolverError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Iteration ran out of budget. Carries the (t12, t34) iterate trace, if any was recorded.
class NoConvergenceError : public SolverError {
public:
    NoConvergenceError(const std::string& message, int iterations,
                       std::vector<std::pair<double, double>> trace = {})
        : SolverError(ErrorCode::NoConvergence, message),
          iterations_(iterations),
          trace_(std::move(trace)) {}

    int iterations() const noexcept { return iterations_; }
    const std::vector<std::pair<double, double>>& trace() const noexcept { return trace_; }

private:
    int iterations_;
    std::vector<std::pair<double, double>> trace_;
};

}  // namespace wsteiner
