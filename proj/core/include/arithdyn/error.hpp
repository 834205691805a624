#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithdyn {

enum class ErrorKind {
    InvalidInput,
    DegenerateMap,
    RepeatedRoot,
    ResourceLimit,
    Indeterminacy,
    UnsupportedScope,
    DigitBudget,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every library operation. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace arithdyn
