#include "hyperloop/errors.hpp"

namespace hyperloop {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InvalidType: return "InvalidType";
        case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
        case ErrorCode::DenominatorNotInvertible: return "DenominatorNotInvertible";
        case ErrorCode::NoPrimitiveRoot: return "NoPrimitiveRoot";
        case ErrorCode::CharEqualsOrder: return "CharEqualsOrder";
        case ErrorCode::CharTwoA2n: return "CharTwoA2n";
        case ErrorCode::RingLacksRoots: return "RingLacksRoots";
        case ErrorCode::NotSplit: return "NotSplit";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::NotSl2: return "NotSl2";
        case ErrorCode::NotHighestLWeight: return "NotHighestLWeight";
        case ErrorCode::LatticeDenominator: return "LatticeDenominator";
        case ErrorCode::ZeroEvaluationPoint: return "ZeroEvaluationPoint";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_precondition_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::DenominatorNotInvertible:
        case ErrorCode::NoPrimitiveRoot:
        case ErrorCode::CharEqualsOrder:
        case ErrorCode::CharTwoA2n:
        case ErrorCode::RingLacksRoots:
        case ErrorCode::NotSplit:
        case ErrorCode::NotHighestLWeight:
        case ErrorCode::ZeroEvaluationPoint:
            return true;
        default:
            return false;
    }
}

}  // namespace hyperloop
