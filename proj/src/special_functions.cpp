#include "eggkernel/special_functions.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace eggkernel::special {

namespace {

constexpr double kLn10 = 2.302585092994046;
// Digits carried by each arithmetic, minus rounding margin of the series.
constexpr double kDoubleDigits = 15.9;
constexpr double kDDDigits = 31.8;
constexpr double kSeriesMargin = 2.0;
constexpr double kMinDigits = 6.0;
// Escalation policy: switch to double-double once the leading term
// m^2 u^{m-1} e^{u^m} tops this many orders of magnitude. The remainder is
// O(1), so that magnitude is the a-priori digit loss of the subtraction.
constexpr double kEscalationLossDigits = 2.75;

void check_mu(int m, double u, const char* who) {
    if (m < 1) throw_domain(errc::invalid_argument, std::string(who) + ": m must be >= 1");
    if (!(u >= 0.0) || !std::isfinite(u))
        throw_domain(errc::invalid_argument, std::string(who) + ": u must be finite and >= 0");
}

// B_{2j} as exact rationals, j = 1..16; enough for ~1e-33 Stirling truncation
// error at x >= 20.5.
constexpr double kBernoulliNum[16] = {
    1.0, -1.0, 1.0, -1.0, 5.0, -691.0, 7.0, -3617.0, 43867.0, -174611.0,
    854513.0, -236364091.0, 8553103.0, -23749461029.0, 8615841276005.0, -7709321041217.0};
constexpr double kBernoulliDen[16] = {
    6.0, 30.0, 42.0, 30.0, 66.0, 2730.0, 6.0, 510.0, 798.0, 330.0,
    138.0, 2730.0, 6.0, 870.0, 14322.0, 510.0};

const DD& dd_half_ln_two_pi() {
    static const DD v = dd_mul(dd_add(dd_log(dd_pi()), dd_ln2()), 0.5);
    return v;
}

DD dd_log_gamma_at(const DD& a);

// Reciprocal-Gamma start values and residue offsets per exponent m, cached
// because they sit in the innermost quadrature loops. invF[j] = 1/Gamma(offF[j])
// with offF[j] = (j+1)/m feeds the F series, invE/offE = j/m + 1 the E series.
// The dd offsets are correctly rounded rationals, not widened doubles: the
// deep-cancellation paths need Gamma at the exact rational, since an offset
// perturbed by ~1e-17 shifts every series term by psi(k+a) times that, which
// is far above the double-double noise floor once the sum is ~e^{u^m}.
struct StartTables {
    std::vector<double> invF, invE, offF, offE;
    std::vector<DD> invF_dd, invE_dd;
    std::vector<DD> offF_dd, offE_dd;
};

const StartTables& start_tables(int m) {
    static std::map<int, StartTables> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    StartTables t;
    t.invF.resize(m);
    t.invE.resize(m);
    t.offF.resize(m);
    t.offE.resize(m);
    t.invF_dd.resize(m);
    t.invE_dd.resize(m);
    t.offF_dd.resize(m);
    t.offE_dd.resize(m);
    for (int j = 0; j < m; ++j) {
        t.offF_dd[j] = dd_div(DD(j + 1.0), DD(static_cast<double>(m)));
        t.offE_dd[j] = dd_add(dd_div(DD(static_cast<double>(j)), DD(static_cast<double>(m))), 1.0);
        t.invF_dd[j] = dd_exp(dd_neg(dd_log_gamma_at(t.offF_dd[j])));
        t.invE_dd[j] = dd_exp(dd_neg(dd_log_gamma_at(t.offE_dd[j])));
        t.offF[j] = static_cast<double>(t.offF_dd[j]);
        t.offE[j] = static_cast<double>(t.offE_dd[j]);
        t.invF[j] = static_cast<double>(t.invF_dd[j]);
        t.invE[j] = static_cast<double>(t.invE_dd[j]);
    }
    return cache.emplace(m, std::move(t)).first->second;
}

// One residue-class series sum_k x^k / Gamma(k + a), advanced by the exact
// ratio x / (k + a). Positive terms; stop once the certified geometric tail
// bound drops below eps * partial.
template <typename Real>
Real residue_series(Real x, Real a, Real start, double eps) {
    Real sum = start;
    Real term = start;
    double ad = static_cast<double>(a);
    for (int k = 0; k < 5000; ++k) {
        term = term * x / (a + static_cast<double>(k));
        sum = sum + term;
        double ratio = static_cast<double>(x) / (k + 1 + ad);
        if (ratio < 0.5) {
            double bound = static_cast<double>(term) * ratio / (1.0 - ratio);
            if (bound < eps * static_cast<double>(sum)) return sum;
        }
    }
    throw_numeric(errc::budget_exhausted, "residue_series: 5000 terms without convergence");
}

template <typename Real>
Real series_F(int m, Real u, Real x, const std::vector<Real>& inv_gamma,
              const std::vector<Real>& offsets, double eps) {
    Real total(0.0);
    Real upow(1.0);
    for (int j = 0; j < m; ++j) {
        total = total + upow * residue_series(x, offsets[j], inv_gamma[j], eps);
        upow = upow * u;
    }
    return total * static_cast<double>(m);
}

template <typename Real>
Real series_E(int m, Real u, Real x, const std::vector<Real>& inv_gamma,
              const std::vector<Real>& offsets, double eps) {
    Real total(0.0);
    Real upow(1.0);
    for (int j = 0; j < m; ++j) {
        total = total + upow * residue_series(x, offsets[j], inv_gamma[j], eps);
        upow = upow * u;
    }
    return total;
}

void check_overflow(int m, double u, const char* who) {
    // The value grows like e^{u^m}; refuse once that exceeds double range.
    if (u > 1.0 && m * std::log(u) > std::log(705.0))
        throw_numeric(errc::overflow, std::string(who) + ": u^m beyond representable range");
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw_domain(errc::invalid_argument, "log_gamma: x must be finite and > 0");
    return std::lgamma(x);
}

double erf(double x) {
    if (!std::isfinite(x)) throw_domain(errc::invalid_argument, "erf: x must be finite");
    return std::erf(x);
}

namespace {

// Core log-Gamma at a double-double argument, used so the series tables can
// evaluate at exact rationals like 1/3 rather than their double roundings.
DD dd_log_gamma_at(const DD& a) {
    // Shift to x = a + N >= 20.5 where the Stirling series with 16 Bernoulli
    // terms is accurate to ~1e-33, then peel the shift off as plain logs.
    int N = 0;
    double ad = static_cast<double>(a);
    if (ad < 20.5) N = static_cast<int>(std::ceil(20.5 - ad));
    DD x = dd_add(a, static_cast<double>(N));
    DD logx = dd_log(x);
    DD result = dd_mul(dd_sub(x, 0.5), logx);
    result = dd_sub(result, x);
    result = dd_add(result, dd_half_ln_two_pi());
    DD x2 = dd_mul(x, x);
    DD xpow = x;  // x^{2j-1}
    for (int j = 1; j <= 16; ++j) {
        double scale = kBernoulliDen[j - 1] * (2.0 * j) * (2.0 * j - 1.0);
        DD term = dd_div(dd_div(DD(kBernoulliNum[j - 1]), DD(scale)), xpow);
        result = dd_add(result, term);
        xpow = dd_mul(xpow, x2);
    }
    for (int i = 0; i < N; ++i) result = dd_sub(result, dd_log(dd_add(a, static_cast<double>(i))));
    return result;
}

} // namespace

DD dd_log_gamma(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw_domain(errc::invalid_argument, "dd_log_gamma: argument must be > 0");
    return dd_log_gamma_at(DD(a));
}

DD dd_gamma(double a) { return dd_exp(dd_log_gamma(a)); }

double mittag_leffler_E(int m, double u, PrecisionMode mode) {
    check_mu(m, u, "mittag_leffler_E");
    check_overflow(m, u, "mittag_leffler_E");
    const StartTables& t = start_tables(m);
    if (mode == PrecisionMode::extended) {
        DD x = dd_pow_int(DD(u), m);
        return static_cast<double>(series_E<DD>(m, DD(u), x, t.invE_dd, t.offE_dd, 1e-32));
    }
    double x = std::pow(u, m);
    return series_E<double>(m, u, x, t.invE, t.offE, 1e-17);
}

double mittag_leffler_F(int m, double u, PrecisionMode mode) {
    check_mu(m, u, "mittag_leffler_F");
    check_overflow(m, u, "mittag_leffler_F");
    const StartTables& t = start_tables(m);
    if (mode == PrecisionMode::extended) {
        DD x = dd_pow_int(DD(u), m);
        return static_cast<double>(series_F<DD>(m, DD(u), x, t.invF_dd, t.offF_dd, 1e-32));
    }
    double x = std::pow(u, m);
    return series_F<double>(m, u, x, t.invF, t.offF, 1e-17);
}

FRemainderInfo f_remainder_info(int m, double u, PrecisionMode mode) {
    check_mu(m, u, "f_remainder");
    FRemainderInfo info;
    if (m == 1) {
        // F_1(u) = e^u equals its leading part exactly on u >= 0.
        info.value = 0.0;
        info.digits = kDoubleDigits;
        return info;
    }
    double x = std::pow(u, m);
    // Predicted digit loss: the remainder is O(1), so subtracting the leading
    // term m^2 u^{m-1} e^{u^m} cancels about log10(lead) digits.
    double loss = u > 0.0 ? (x + (m - 1) * std::log(u) + 2.0 * std::log(m)) / kLn10 : 0.0;
    bool use_dd = (mode == PrecisionMode::extended) || loss > kEscalationLossDigits;
    info.escalated = use_dd && mode == PrecisionMode::standard;
    if (use_dd && kDDDigits - kSeriesMargin - loss < kMinDigits)
        throw_numeric(errc::precision_exhausted,
                      "f_remainder: cancellation at u^m = " + std::to_string(x) +
                          " exceeds the double-double budget");
    const StartTables& t = start_tables(m);
    double leading_mag;
    if (use_dd) {
        DD xd = dd_pow_int(DD(u), m);
        DD F = series_F<DD>(m, DD(u), xd, t.invF_dd, t.offF_dd, 1e-32);
        DD lead = dd_mul(dd_mul(dd_pow_int(DD(u), m - 1), dd_exp(xd)),
                         static_cast<double>(m) * m);
        info.value = static_cast<double>(dd_sub(F, lead));
        leading_mag = std::abs(static_cast<double>(lead));
        info.digits = kDDDigits - kSeriesMargin;
    } else {
        double F = series_F<double>(m, u, x, t.invF, t.offF, 1e-17);
        double lead = m * static_cast<double>(m) * std::pow(u, m - 1) * std::exp(x);
        info.value = F - lead;
        leading_mag = std::abs(lead);
        info.digits = kDoubleDigits - kSeriesMargin;
    }
    // Measured cancellation, not just the a-priori estimate.
    if (info.value != 0.0 && leading_mag > 0.0)
        info.digits -= std::log10(leading_mag / std::abs(info.value));
    if (info.digits < kMinDigits)
        throw_numeric(errc::precision_exhausted,
                      "f_remainder: only " + std::to_string(info.digits) +
                          " digits survive the cancellation at u^m = " + std::to_string(x));
    return info;
}

double f_remainder(int m, double u, PrecisionMode mode) {
    return f_remainder_info(m, u, mode).value;
}

double scaled_F(int m, double u) {
    check_mu(m, u, "scaled_F");
    if (m == 1) return 1.0;
    double x = std::pow(u, m);
    if (x > 45.0) {
        // f_m e^{-x} < 2 f_m(0) e^{-45} ~ 1e-20, negligible next to m^2 u^{m-1} >= m^2.
        return m * static_cast<double>(m) * std::pow(u, m - 1);
    }
    const StartTables& t = start_tables(m);
    double F = series_F<double>(m, u, x, t.invF, t.offF, 1e-17);
    return F * std::exp(-x);
}

double f_at_zero(int m) {
    if (m < 1) throw_domain(errc::invalid_argument, "f_at_zero: m must be >= 1");
    return m / std::exp(std::lgamma(1.0 / m));
}

double f_envelope_bound(int m) { return 2.0 * f_at_zero(m); }

} // namespace eggkernel::special
