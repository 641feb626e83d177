#ifndef EGGKERNEL_ERRORS_HPP
#define EGGKERNEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eggkernel {

// Failure taxonomy shared by every module. Validation failures (bad arguments,
// points off the boundary, missing calibration) are kept apart from numeric
// failures (budgets, cancellation, divergence) so the CLI can map them to
// distinct exit codes.
enum class errc {
    invalid_argument,
    not_on_boundary,
    interior_point,
    degenerate_denominator,
    calibration_missing,
    overflow,
    precision_exhausted,
    tolerance_not_met,
    divergence,
    budget_exhausted,
    calibration_inconsistent,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

// Argument/state validation problems. CLI exit code 2.
class DomainError : public Error {
  public:
    using Error::Error;
};

// Numeric evaluation problems (never silently wrong). CLI exit code 3.
class NumericError : public Error {
  public:
    using Error::Error;
};

inline const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::invalid_argument: return "invalid-argument";
        case errc::not_on_boundary: return "not-on-boundary";
        case errc::interior_point: return "interior-point";
        case errc::degenerate_denominator: return "degenerate-denominator";
        case errc::calibration_missing: return "calibration-missing";
        case errc::overflow: return "overflow";
        case errc::precision_exhausted: return "precision-exhausted";
        case errc::tolerance_not_met: return "tolerance-not-met";
        case errc::divergence: return "divergence";
        case errc::budget_exhausted: return "budget-exhausted";
        case errc::calibration_inconsistent: return "calibration-inconsistent";
    }
    return "unknown";
}

[[noreturn]] inline void throw_domain(errc code, const std::string& what) {
    throw DomainError(code, what);
}

[[noreturn]] inline void throw_numeric(errc code, const std::string& what) {
    throw NumericError(code, what);
}

} // namespace eggkernel

#endif
