#ifndef EGGKERNEL_SPECIAL_FUNCTIONS_HPP
#define EGGKERNEL_SPECIAL_FUNCTIONS_HPP

#include "eggkernel/dd.hpp"
#include "eggkernel/settings.hpp"

namespace eggkernel::special {

// Thin, validated wrappers over libm. Contract: relative error <= 1e-14 for
// log_gamma on [0.1, 200] (tested against an independent oracle).
double log_gamma(double x);
double erf(double x);

// Extended-precision counterparts (Stirling series after an argument shift to
// x >= 20.5). Used for the reciprocal-Gamma start values of the series below
// and exposed for tests. Accuracy ~1e-29 relative.
DD dd_log_gamma(double a);
DD dd_gamma(double a);

// Entire series E_m(u) = sum_{v>=0} u^v / Gamma(v/m + 1) and its derivative
// F_m(u) = E_m'(u) = m sum_{v>=0} u^v / Gamma((v+1)/m), for integer m >= 1 and
// real u >= 0. Both are sums of positive terms (no cancellation); `extended`
// just runs the same recurrences in double-double. Terms are grouped by
// residue class v = k m + j so each group advances by the factor
// u^m / (k + const), which needs only m reciprocal-Gamma start values.
double mittag_leffler_E(int m, double u, PrecisionMode mode = PrecisionMode::standard);
double mittag_leffler_F(int m, double u, PrecisionMode mode = PrecisionMode::standard);

// Remainder after stripping the exponential part:
//   f_m(u) = F_m(u) - m^2 u^{m-1} e^{u^m},
// the bounded function that controls every non-dominant term in the kernel
// decompositions. Subtraction is the only route, so the digit loss
// (~ log10 of the leading term, since f_m is O(1)) is budgeted explicitly:
// the evaluation escalates from double to double-double once the predicted
// loss tops ~3 digits and fails with precision-exhausted (never a silently
// wrong value) once fewer than 6 significant digits would survive even in
// double-double (u^m ~ 52 for m = 2).
// For m = 1 the remainder is identically zero on u >= 0 and is returned
// exactly.
double f_remainder(int m, double u, PrecisionMode mode = PrecisionMode::standard);

struct FRemainderInfo {
    double value = 0.0;
    double digits = 0.0;  // estimated correct significant digits
    bool escalated = false;
};
FRemainderInfo f_remainder_info(int m, double u, PrecisionMode mode = PrecisionMode::standard);

// e^{-u^m} F_m(u). This is what the kernel integrands actually need: the
// scaled form never overflows and never cancels. For u^m > 45 the remainder
// contribution f_m(u) e^{-u^m} is below 1e-19 of the leading m^2 u^{m-1} and
// is dropped, which keeps the evaluation cheap deep in the integration tails.
double scaled_F(int m, double u);

// m / Gamma(1/m). For m >= 2 this is both F_m(0) and the u -> 0 limit of
// f_m (the stripped exponential part vanishes at 0). For m = 1 it is F_1(0);
// the remainder f_1 itself is identically zero.
double f_at_zero(int m);

// Grid-backed envelope: sup_{u >= 0} f_m(u) <= 2 f_m(0) (the observed max is
// at u = 0 and f_m decays like u^{-m} for large u; the factor 2 is headroom,
// verified on the test grids). Quadrature tail envelopes rely on this.
double f_envelope_bound(int m);

} // namespace eggkernel::special

#endif
