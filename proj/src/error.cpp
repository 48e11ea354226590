#include "deltacone/error.hpp"

namespace deltacone {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid input";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::stencil: return "stencil error";
        case ErrorKind::sampling_failure: return "sampling failure";
        case ErrorKind::empty_domain: return "empty domain";
        case ErrorKind::resolution: return "resolution error";
        case ErrorKind::degeneracy: return "degeneracy error";
    }
    return "error";
}

}  // namespace deltacone
