#include "cpat/errors.hpp"

namespace cpat {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotASphere: return "NotASphere";
        case ErrorCode::NonManifold: return "NonManifold";
        case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
        case ErrorCode::DegenerateFace: return "DegenerateFace";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::FullSubset: return "FullSubset";
        case ErrorCode::NotTrivalent: return "NotTrivalent";
        case ErrorCode::TooFewFaces: return "TooFewFaces";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::NotMutuallyIntersecting: return "NotMutuallyIntersecting";
        case ErrorCode::CoversSphere: return "CoversSphere";
        case ErrorCode::ConditionsViolated: return "ConditionsViolated";
        case ErrorCode::Stalled: return "Stalled";
        case ErrorCode::LayoutInconsistent: return "LayoutInconsistent";
        case ErrorCode::ContinuationStuck: return "ContinuationStuck";
        case ErrorCode::BaseSolveFailed: return "BaseSolveFailed";
        case ErrorCode::MalformedPattern: return "MalformedPattern";
        case ErrorCode::VertexOutsideBall: return "VertexOutsideBall";
        case ErrorCode::SingularTriple: return "SingularTriple";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

}  // namespace cpat
