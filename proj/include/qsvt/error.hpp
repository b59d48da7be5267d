#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qsvt {

enum class Errc {
    NotSquare,
    NotHermitian,
    NonFinite,
    ConvergenceFailure,
    NotPsd,
    NotUnitary,
    DimensionMismatch,
    RelationViolation,
    NotContraction,
    MissingFinalPhase,
    PhaseConventionViolation,
    DegenerateScaling,
    OutOfRange,
    ConfigInvalid,
    IoError,
    ParseError,
    UnknownDemo,
};

constexpr std::string_view errc_name(Errc c) noexcept {
    switch (c) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NonFinite: return "NonFinite";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::NotPsd: return "NotPSD";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::RelationViolation: return "RelationViolation";
    case Errc::NotContraction: return "NotContraction";
    case Errc::MissingFinalPhase: return "MissingFinalPhase";
    case Errc::PhaseConventionViolation: return "PhaseConventionViolation";
    case Errc::DegenerateScaling: return "DegenerateScaling";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::ConfigInvalid: return "ConfigInvalid";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownDemo: return "UnknownDemo";
    }
    return "Unknown";
}

/// %.3g rendering for messages.
inline std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace qsvt
