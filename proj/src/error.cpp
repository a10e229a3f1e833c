#include "precut/error.hpp"

namespace precut {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotPromap: return "NotPromap";
        case ErrorCode::NotPartialMap: return "NotPartialMap";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::GroundMismatch: return "GroundMismatch";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::BadDecomposition: return "BadDecomposition";
        case ErrorCode::NotExhaustive: return "NotExhaustive";
        case ErrorCode::NotNested: return "NotNested";
        case ErrorCode::NotBreakPoint: return "NotBreakPoint";
        case ErrorCode::FrameViolation: return "FrameViolation";
        case ErrorCode::NotARefinement: return "NotARefinement";
        case ErrorCode::NotTotalPreorder: return "NotTotalPreorder";
        case ErrorCode::UnknownInstance: return "UnknownInstance";
        case ErrorCode::IrreducibilityNotVerified: return "IrreducibilityNotVerified";
        case ErrorCode::NotIntertwined: return "NotIntertwined";
        case ErrorCode::NonIntegral: return "NonIntegral";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

}  // namespace precut
