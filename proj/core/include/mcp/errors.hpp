#pragma once

#include <stdexcept>
#include <string>

namespace mcp {

/// Invalid input data: malformed files, violated preconditions, rejected
/// problem instances. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A work bound was exceeded before the computation could finish.
class BudgetError : public InputError {
public:
    explicit BudgetError(const std::string& what) : InputError(what) {}
};

/// A guaranteed internal invariant failed to hold. Always a bug. The CLI
/// maps this to exit code 2.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// The exact snap step produced a point that fails its envelope certificates.
class SnapRejected : public InternalError {
public:
    explicit SnapRejected(const std::string& what) : InternalError(what) {}
};

}  // namespace mcp
