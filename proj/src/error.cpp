#include "aoisched/error.hpp"

namespace aoisched {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInstance: return "invalid instance";
    case ErrorCode::InfeasibleInstance: return "infeasible instance";
    case ErrorCode::InvalidSchedule: return "invalid schedule";
    case ErrorCode::WrongBranch: return "wrong branch";
    case ErrorCode::InternalInconsistency: return "internal inconsistency";
    case ErrorCode::DegenerateHorizon: return "degenerate horizon";
    case ErrorCode::InvalidConfig: return "invalid config";
    case ErrorCode::ParseError: return "parse error";
    }
    return "unknown error";
}

} // namespace aoisched
