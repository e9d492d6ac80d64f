#pragma once

#include <stdexcept>
#include <string>

namespace voxcurv {

/// Bad user input: malformed files, invalid parameters, violated operation
/// preconditions. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency failure, e.g. a type-count combination that cannot
/// arise from a correct surface extraction. The CLI maps this to exit code 3.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace voxcurv
