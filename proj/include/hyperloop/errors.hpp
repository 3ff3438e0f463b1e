#pragma once

#include <stdexcept>
#include <string>

namespace hyperloop {

/// Error categories shared by the C++ core and the C API (values are the C error codes).
enum class ErrorCode : int {
    InvalidArgument = 1,
    InvalidType = 2,
    NotAnAutomorphism = 3,
    DenominatorNotInvertible = 4,
    NoPrimitiveRoot = 5,
    CharEqualsOrder = 6,
    CharTwoA2n = 7,
    RingLacksRoots = 8,
    NotSplit = 9,
    DegreeOutOfRange = 10,
    NotSl2 = 11,
    NotHighestLWeight = 12,
    LatticeDenominator = 13,
    ZeroEvaluationPoint = 14,
    Internal = 15,
};

const char* error_name(ErrorCode code);

/// True for errors that signal a violated mathematical precondition
/// (as opposed to malformed input or internal failures).
bool is_precondition_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace hyperloop
