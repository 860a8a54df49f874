#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhj {

enum class ErrorCode {
    InvalidParameter,
    UnknownFamily,
    Domain,
    Singularity,
    NoClassicalRegion,
    NoSuchLevel,
    NoBoundState,
    Window,
    BranchSelection,
    DegenerateResidue,
    BranchInconsistency,
    BranchCrossing,
    Convergence,
    OracleFailure,
    NearNode,
    Contract,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// machine readable; the CLI maps it to an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string context = {})
        : std::runtime_error(message), code_(code), context_(std::move(context)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& context() const noexcept { return context_; }

    /// True for failures caused by bad input rather than numerics.
    bool is_validation() const noexcept {
        return code_ == ErrorCode::InvalidParameter || code_ == ErrorCode::UnknownFamily ||
               code_ == ErrorCode::Io || code_ == ErrorCode::Contract;
    }

private:
    ErrorCode code_;
    std::string context_;
};

}  // namespace qhj
