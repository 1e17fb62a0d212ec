#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpat {

enum class ErrorCode {
    InvalidInput,
    // complex
    NotASphere,
    NonManifold,
    InconsistentOrientation,
    DegenerateFace,
    LimitExceeded,
    EmptySubset,
    FullSubset,
    NotTrivalent,
    TooFewFaces,
    // kernel
    DomainError,
    Infeasible,
    NotMutuallyIntersecting,
    CoversSphere,
    // solver
    ConditionsViolated,
    Stalled,
    LayoutInconsistent,
    ContinuationStuck,
    BaseSolveFailed,
    // verify
    MalformedPattern,
    // polyhedron
    VertexOutsideBall,
    SingularTriple,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is the
/// stable, machine-readable part; the message is for humans.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised by the solvers when iteration cannot reach the requested tolerance.
/// Carries what the solver knew when it gave up.
class SolveError : public Error
{
public:
    SolveError(ErrorCode code, const std::string& message)
        : Error(code, message)
    {
    }

    /// Vertex subset suspected of collapsing (largest degeneration functional).
    std::vector<int> suspected_subset;
    double suspected_value = 0.0;
    /// Residual at the point of failure.
    double residual = 0.0;
    /// Continuation parameter reached (spherical solver only).
    double t_reached = 0.0;
};

}  // namespace cpat
