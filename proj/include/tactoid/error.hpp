#pragma once

#include <stdexcept>
#include <string>

namespace tactoid {

enum class ErrorKind {
    malformed_curve,
    domain_error,
    vertical_tangent,
    solver_failure,
    degenerate_domain,
    io_error,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::malformed_curve: return "malformed-curve";
        case ErrorKind::domain_error: return "domain-error";
        case ErrorKind::vertical_tangent: return "vertical-tangent";
        case ErrorKind::solver_failure: return "solver-failure";
        case ErrorKind::degenerate_domain: return "degenerate-domain";
        case ErrorKind::io_error: return "io-error";
    }
    return "error";
}

}  // namespace tactoid
