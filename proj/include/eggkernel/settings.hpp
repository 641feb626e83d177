#ifndef EGGKERNEL_SETTINGS_HPP
#define EGGKERNEL_SETTINGS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "eggkernel/errors.hpp"

namespace eggkernel {

// standard = plain double everywhere; extended = double-double where the
// evaluation is cancellation-limited. Either way f_remainder escalates on its
// own when the predicted digit loss crosses the policy threshold, so
// `standard` is a preference, not a cap.
enum class PrecisionMode { standard, extended };

inline const char* precision_name(PrecisionMode p) {
    return p == PrecisionMode::standard ? "standard" : "extended";
}

// Evaluation knobs plus the calibrated normalization constants. The three
// constants are dimensionless ratios against the literal textbook-form
// normalizations (see kernel_eval: calibrate_constants) and start out as NaN,
// meaning "not calibrated yet"; evaluators that need them refuse to run until
// calibrate_constants (or the CLI `calibrate` verb) has filled them in.
struct EvalSettings {
    double tol = 1e-8;
    int max_subdivisions = 4000;
    long max_series_terms = 40000000;
    int max_series_degree = 6000;
    PrecisionMode precision = PrecisionMode::standard;

    // bergman_series multiplier: effective constant = series_constant_c *
    // (1/(2 pi^n)) prod_j m_j. Calibrated value is 2 (see CalibrationReport).
    double series_constant_c = std::numeric_limits<double>::quiet_NaN();
    // Multipliers for the closed-form profile expressions on domains
    // m = (1,...,1,m). Calibrated values are 1/2 (Bergman) and 1 (Szego).
    double closed_form_constant = std::numeric_limits<double>::quiet_NaN();
    double closed_form_constant_szego = std::numeric_limits<double>::quiet_NaN();

    bool calibrated() const {
        return std::isfinite(series_constant_c) && std::isfinite(closed_form_constant) &&
               std::isfinite(closed_form_constant_szego);
    }

    void validate() const {
        if (!(tol > 1e-14 && tol < 1e-2))
            throw_domain(errc::invalid_argument, "tol must lie in (1e-14, 1e-2)");
        if (max_subdivisions < 16)
            throw_domain(errc::invalid_argument, "max_subdivisions must be >= 16");
        if (max_series_terms < 1000)
            throw_domain(errc::invalid_argument, "max_series_terms must be >= 1000");
        if (max_series_degree < 4)
            throw_domain(errc::invalid_argument, "max_series_degree must be >= 4");
    }

    // FNV-1a over the canonical textual form; stamped into kernel JSON output
    // so results can be traced to the exact settings that produced them.
    std::string digest() const;
};

} // namespace eggkernel

#endif
