#include "arithdyn/error.hpp"

namespace arithdyn {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::DegenerateMap: return "degenerate-map";
        case ErrorKind::RepeatedRoot: return "repeated-root";
        case ErrorKind::ResourceLimit: return "resource-limit";
        case ErrorKind::Indeterminacy: return "indeterminacy";
        case ErrorKind::UnsupportedScope: return "unsupported-scope";
        case ErrorKind::DigitBudget: return "digit-budget";
    }
    return "unknown";
}

}  // namespace arithdyn
