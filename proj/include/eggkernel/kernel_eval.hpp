#pragma once

#include <complex>
#include <vector>

#include "eggkernel/egg_domain.hpp"
#include "eggkernel/settings.hpp"

namespace eggkernel {

enum class Kernel { bergman, szego };

enum class Method { series, integral, leading, closed };

inline const char* kernel_name(Kernel k) { return k == Kernel::bergman ? "bergman" : "szego"; }
inline const char* method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::integral: return "integral";
        case Method::leading: return "leading";
        default: return "closed";
    }
}

struct KernelValue {
    double value = 0.0;
    double error_estimate = 0.0;
    Kernel kernel = Kernel::bergman;
    Method method = Method::series;
    double r = 0.0;  ///< 1 - sum |z_j|^{2 m_j} at the evaluation point
};

/**
 * Diagonal Bergman kernel by the monomial series
 *   K(z) = c_eff sum_nu |z|^{2 nu} Gamma(1 + sum_j (nu_j+1)/m_j)
 *                                  / prod_j Gamma((nu_j+1)/m_j),
 * c_eff = series_constant_c * (1/(2 pi^n)) prod_j m_j. The shells are summed
 * in graded order with a geometric tail certificate. Requires calibrated
 * settings (calibration_missing otherwise). Points with r < 1e-4 are refused
 * up front with a divergence signal: the shell ratio is 1 - O(r) there and
 * no sensible budget brings the certified tail below tolerance.
 */
KernelValue bergman_series(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                           const EvalSettings& settings);

/**
 * Diagonal Szego kernel by the analogous series with numerator
 * Gamma(sum_j (nu_j+1)/m_j) and constant (1/(2 pi^n)) prod_j m_j. The
 * constant here is pinned by termwise integration of the integral form, so
 * only the calibration stamp is checked, not series_constant_c.
 */
KernelValue szego_series(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                         const EvalSettings& settings);

/**
 * Diagonal Bergman kernel by the integral representation
 *   K(z) = (1/pi^n) int_0^inf e^{-tau} prod_j F_{m_j}(|z_j|^2 tau^{1/m_j})
 *                                     tau^{sum 1/m_j} dtau.
 * Internally the exponential growth of F is factored out so the integrand
 * becomes e^{-r tau} times bounded factors; the truncation tail is certified
 * against that envelope. Throws divergence when r <= 0 and tolerance_not_met
 * when r < 1e-6 (the truncation point outruns any subdivision budget).
 */
KernelValue bergman_integral(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                             const EvalSettings& settings);

/** Szego analogue: tau power lowered by one, constant 1/(2 pi^n). */
KernelValue szego_integral(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                           const EvalSettings& settings);

/** One term of the subset decomposition of the Bergman integral. */
struct IKTerm {
    std::vector<int> K;  ///< 0-based index subset, contains every m_j = 1 direction
    double value = 0.0;
};

/**
 * Splitting every factor F_m = m^2 u^{m-1} e^{u^m} + f_m and expanding the
 * product over a subset K of directions (K must contain all of cls.I, where
 * f vanishes identically) gives
 *   I_K(z) = (1/n!) prod_{j in K} m_j^2 |z_j|^{2(m_j-1)}
 *            int_0^inf e^{-a_K tau} prod_{j notin K} f_{m_j}(|z_j|^2 tau^{1/m_j})
 *                      tau^{|K| + sum_{j notin K} 1/m_j} dtau,
 * a_K = 1 - sum_{j in K} |z_j|^{2 m_j}, and (n!/pi^n) sum_K I_K(z) rebuilds
 * the Bergman kernel exactly. Terms whose prefactor vanishes return 0
 * without quadrature.
 */
IKTerm i_k_term(const EggDomain& domain, const BoundaryClassification& cls,
                const std::vector<int>& K, const std::vector<std::complex<double>>& z,
                const EvalSettings& settings);

/**
 * Squared L^2(E_m) norm of the monomial z^nu by direct numeric integration:
 * polar reduction in every coordinate, iterated adaptive radial quadrature
 * with the innermost ring integral done by the exact power rule. Independent
 * of every series/Gamma identity above, which is the point: it anchors the
 * calibration. Requires |nu| <= 12.
 */
double monomial_norm_oracle(const EggDomain& domain, const std::vector<int>& nu,
                            const EvalSettings& settings);

} // namespace eggkernel
