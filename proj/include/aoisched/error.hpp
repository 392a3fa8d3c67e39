#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aoisched {

// Category of a library failure. CLI maps these to exit codes: input-side
// problems (invalid/infeasible/parse/degenerate) exit 2, internal logic
// failures exit 1.
enum class ErrorCode {
    InvalidInstance,      // malformed inputs: empty arrivals, negative times, ...
    InfeasibleInstance,   // well-formed but no schedule can meet the deadline
    InvalidSchedule,      // schedule breaks an ordering/deadline rule
    WrongBranch,          // closed-form solver called outside its horizon range
    InternalInconsistency,// post-condition violated; signals a solver bug
    DegenerateHorizon,    // simulation horizon shorter than one slot
    InvalidConfig,        // bad simulation/oracle configuration
    ParseError,           // malformed JSON/CSV input
};

const char* error_code_name(ErrorCode code);

class AoiError : public std::runtime_error {
public:
    AoiError(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }
    bool input_error() const { return code_ != ErrorCode::InternalInconsistency; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw AoiError(code, std::string(error_code_name(code)) + ": " + message);
}

} // namespace aoisched
