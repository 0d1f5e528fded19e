#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclelab {

enum class ErrorCode {
    InvalidInput,
    NotInRealForm,
    NumericalDegeneracy,
    UnknownFamilyMember,
    IntersectionFailure,
    InvalidSlicePoint,
    IncidenceMiss,
    UniquenessViolation,
    EigenvectorAmbiguity,
    OnCellBoundary,
    NotInDomain,
    NotIncident,
    FiberEmpty,
    OptimizerStall,
    StencilFailure,
    InvalidMatrix,
    DiscOutOfDomain,
    MinorantFailure,
};

std::string_view error_name(ErrorCode code);

class CycleLabError : public std::runtime_error {
public:
    CycleLabError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw CycleLabError(code, what); }

}  // namespace cyclelab
