#include "cyclelab/error.hpp"

namespace cyclelab {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "InvalidInput";
        case ErrorCode::NotInRealForm: return "NotInRealForm";
        case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorCode::UnknownFamilyMember: return "UnknownFamilyMember";
        case ErrorCode::IntersectionFailure: return "IntersectionFailure";
        case ErrorCode::InvalidSlicePoint: return "InvalidSlicePoint";
        case ErrorCode::IncidenceMiss: return "IncidenceMiss";
        case ErrorCode::UniquenessViolation: return "UniquenessViolation";
        case ErrorCode::EigenvectorAmbiguity: return "EigenvectorAmbiguity";
        case ErrorCode::OnCellBoundary: return "OnCellBoundary";
        case ErrorCode::NotInDomain: return "NotInDomain";
        case ErrorCode::NotIncident: return "NotIncident";
        case ErrorCode::FiberEmpty: return "FiberEmpty";
        case ErrorCode::OptimizerStall: return "OptimizerStall";
        case ErrorCode::StencilFailure: return "StencilFailure";
        case ErrorCode::InvalidMatrix: return "InvalidMatrix";
        case ErrorCode::DiscOutOfDomain: return "DiscOutOfDomain";
        case ErrorCode::MinorantFailure: return "MinorantFailure";
    }
    return "Unknown";
}

}  // namespace cyclelab
