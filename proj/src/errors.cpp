#include "wsteiner/errors.hpp"

namespace wsteiner {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DegenerateEdge: return "degenerate_edge";
        case ErrorCode::ParallelEdges: return "parallel_edges";
        case ErrorCode::InfeasibleWeights: return "infeasible_weights";
        case ErrorCode::NoConvergence: return "no_convergence";
        case ErrorCode::NodeOffSegment: return "node_off_segment";
        case ErrorCode::UndefinedTwist: return "undefined_twist";
        case ErrorCode::DegenerateConfiguration: return "degenerate_configuration";
        case ErrorCode::InconsistentSolution: return "inconsistent_solution";
        case ErrorCode::InvalidInput: return "invalid_input";
        case ErrorCode::UnsupportedFormat: return "unsupported_format";
    }
    return "unknown";
}

}  // namespace wsteiner
