#pragma once

#include <stdexcept>
#include <string>

namespace deltacone {

enum class ErrorKind {
    invalid_input,
    domain,
    stencil,
    sampling_failure,
    empty_domain,
    resolution,
    degeneracy,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` distinguishes the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace deltacone
