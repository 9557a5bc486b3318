#include "nneig/error.hpp"

namespace nneig {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return "input";
        case ErrorKind::structural: return "structural";
        case ErrorKind::parse: return "parse";
        case ErrorKind::range: return "range";
        case ErrorKind::bound_violation: return "bound-violation";
        case ErrorKind::probabilistic: return "probabilistic-failure";
        case ErrorKind::approximation: return "approximation";
        case ErrorKind::contract: return "contract";
        case ErrorKind::unsupported: return "unsupported";
    }
    return "unknown";
}

}  // namespace nneig
