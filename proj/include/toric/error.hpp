#ifndef TORIC_ERROR_HPP
#define TORIC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorKind {
    InvalidInput,
    LengthMismatch,
    ZeroCoordinate,
    EnumerationLimit,
    DimensionDeficient,
    NotInterior,
    BasepointHit,
    AtInfinity,
    OnBoundary,
    OutsidePolytope,
    NoConvergence,
    Io,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorKind::EnumerationLimit: return "EnumerationLimit";
    case ErrorKind::DimensionDeficient: return "DimensionDeficient";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::BasepointHit: return "BasepointHit";
    case ErrorKind::AtInfinity: return "AtInfinity";
    case ErrorKind::OnBoundary: return "OnBoundary";
    case ErrorKind::OutsidePolytope: return "OutsidePolytope";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can branch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace toric

#endif // TORIC_ERROR_HPP
