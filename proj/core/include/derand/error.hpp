#pragma once

#include <stdexcept>
#include <string>

namespace derand {

/// Raised when an operation's precondition is violated. `stage()` names the
/// pipeline stage or operation that rejected its input.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage.empty() ? what : stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// An enumeration (seed space, input space, sampler blocks) would exceed its configured bit budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace derand
