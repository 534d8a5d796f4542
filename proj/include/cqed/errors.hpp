#pragma once

#include <stdexcept>
#include <string>

namespace cqed {

// Error categories map onto the CLI exit codes.
enum class ErrorCode {
    logic = 1,        // contract violation / internal inconsistency
    config = 2,       // config file or parameter problems
    dimension = 3,    // state space exceeds the configured cap
    instability = 4,  // integrator diverged
};

class SimError : public std::runtime_error {
public:
    SimError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw SimError(code, msg);
}

inline void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

}  // namespace cqed
