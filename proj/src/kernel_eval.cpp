#include "eggkernel/kernel_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "eggkernel/errors.hpp"
#include "eggkernel/quadrature.hpp"
#include "eggkernel/special_functions.hpp"

namespace eggkernel {

namespace {

using special::f_at_zero;
using special::f_envelope_bound;
using special::f_remainder;
using special::scaled_F;

double pi_pow(int n) { return std::pow(std::numbers::pi, n); }

std::vector<double> moduli_squared(const std::vector<std::complex<double>>& z) {
    std::vector<double> x(z.size());
    for (size_t j = 0; j < z.size(); ++j) x[j] = std::norm(z[j]);
    return x;
}

// Memoized lgamma(k / L) for the rational arguments the series walks through.
class RationalLgamma {
  public:
    explicit RationalLgamma(int L) : L_(L) {}
    double operator()(long num) {
        if (num <= 0) throw_domain(errc::invalid_argument, "lgamma of nonpositive argument");
        size_t i = static_cast<size_t>(num);
        if (i >= table_.size()) table_.resize(i + 1, std::numeric_limits<double>::quiet_NaN());
        if (std::isnan(table_[i])) table_[i] = std::lgamma(static_cast<double>(num) / L_);
        return table_[i];
    }

  private:
    int L_;
    std::vector<double> table_;
};

KernelValue series_eval(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                        const EvalSettings& settings, Kernel which) {
    settings.validate();
    if (!settings.calibrated())
        throw_domain(errc::calibration_missing,
                     "series method requires calibrated settings; run the calibrate step first");
    double r = domain.defining_r(z);
    if (r <= 0.0)
        throw_numeric(errc::divergence, "series method: point is outside or on the boundary (r = " +
                                            std::to_string(r) + ")");
    if (r < 1e-4)
        throw_numeric(errc::divergence,
                      "series method: r = " + std::to_string(r) +
                          " leaves the shell ratio at 1 - O(r); use the integral method");

    int n = domain.n();
    int L = domain.m_lcm();
    std::vector<double> x = moduli_squared(z);
    std::vector<double> logx(x.size());
    for (size_t j = 0; j < x.size(); ++j) logx[j] = x[j] > 0.0 ? std::log(x[j]) : 0.0;
    std::vector<long> axis_step(x.size());
    for (size_t j = 0; j < x.size(); ++j) axis_step[j] = L / domain.m_at(static_cast<int>(j));

    RationalLgamma lg(L);
    const bool bergman = which == Kernel::bergman;
    auto term = [&](const std::vector<int>& nu) {
        long top = bergman ? L : 0;
        double logt = 0.0;
        for (size_t j = 0; j < x.size(); ++j) {
            if (nu[j] > 0 && x[j] == 0.0) return 0.0;
            long num = (nu[j] + 1L) * axis_step[j];
            top += num;
            logt += nu[j] * logx[j] - lg(num);
        }
        logt += lg(top);
        return std::exp(logt);
    };

    quad::LatticeSeriesResult sum = quad::sum_lattice_series(
        n, term, settings.tol, settings.max_series_terms, settings.max_series_degree);

    double prod_m = 1.0;
    for (int mj : domain.m()) prod_m *= mj;
    double c_eff = prod_m / (2.0 * pi_pow(n));
    if (bergman) c_eff *= settings.series_constant_c;

    KernelValue kv;
    kv.value = c_eff * sum.value;
    kv.error_estimate = c_eff * sum.error_estimate + 1e-15 * std::abs(kv.value);
    kv.kernel = which;
    kv.method = Method::series;
    kv.r = r;
    return kv;
}

KernelValue integral_eval(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                          const EvalSettings& settings, Kernel which) {
    settings.validate();
    double r = domain.defining_r(z);
    if (r <= 0.0)
        throw_numeric(errc::divergence,
                      "integral method: point is outside or on the boundary (r = " +
                          std::to_string(r) + ")");
    if (r < 1e-6)
        throw_numeric(errc::tolerance_not_met,
                      "integral method: r = " + std::to_string(r) +
                          " pushes the truncation point beyond any subdivision budget");

    int n = domain.n();
    std::vector<double> x = moduli_squared(z);
    const bool bergman = which == Kernel::bergman;
    double tau_pow = domain.inv_m_sum() - (bergman ? 0.0 : 1.0);

    // Factor the exponential growth out of every F so the integrand becomes
    // e^{-r tau} times bounded factors times tau^p.
    quad::SemiInfiniteIntegrand g;
    g.f = [&](double tau) {
        double prod = 1.0;
        for (size_t j = 0; j < x.size(); ++j) {
            int mj = domain.m_at(static_cast<int>(j));
            prod *= scaled_F(mj, x[j] * std::pow(tau, 1.0 / mj));
        }
        return std::exp(-r * tau) * prod * std::pow(tau, tau_pow);
    };
    g.decay_rate = r;
    g.power = n - (bergman ? 0.0 : 1.0);
    g.envelope_C = 1.0;
    for (size_t j = 0; j < x.size(); ++j) {
        int mj = domain.m_at(static_cast<int>(j));
        g.envelope_C *= mj * mj * std::pow(x[j], mj - 1) + f_envelope_bound(mj);
    }
    g.T0 = 1.0;
    g.head_power = domain.m_lcm();

    quad::QuadratureResult q = quad::integrate_semi_infinite(g, settings.tol, settings.max_subdivisions);

    double c = 1.0 / pi_pow(n);
    if (!bergman) c *= 0.5;
    KernelValue kv;
    kv.value = c * q.value;
    kv.error_estimate = c * q.error_estimate;
    kv.kernel = which;
    kv.method = Method::integral;
    kv.r = r;
    return kv;
}

} // namespace

KernelValue bergman_series(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                           const EvalSettings& settings) {
    return series_eval(domain, z, settings, Kernel::bergman);
}

KernelValue szego_series(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                         const EvalSettings& settings) {
    return series_eval(domain, z, settings, Kernel::szego);
}

KernelValue bergman_integral(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                             const EvalSettings& settings) {
    return integral_eval(domain, z, settings, Kernel::bergman);
}

KernelValue szego_integral(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                           const EvalSettings& settings) {
    return integral_eval(domain, z, settings, Kernel::szego);
}

IKTerm i_k_term(const EggDomain& domain, const BoundaryClassification& cls,
                const std::vector<int>& K, const std::vector<std::complex<double>>& z,
                const EvalSettings& settings) {
    settings.validate();
    double r = domain.defining_r(z);
    if (r <= 0.0)
        throw_numeric(errc::divergence, "i_k_term: point is outside or on the boundary");

    int n = domain.n();
    IKTerm out;
    out.K = K;
    std::sort(out.K.begin(), out.K.end());
    std::vector<bool> in_k(static_cast<size_t>(n), false);
    for (int j : out.K) {
        if (j < 0 || j >= n) throw_domain(errc::invalid_argument, "i_k_term: index out of range");
        if (in_k[static_cast<size_t>(j)])
            throw_domain(errc::invalid_argument, "i_k_term: repeated index in K");
        in_k[static_cast<size_t>(j)] = true;
    }
    for (int j : cls.I)
        if (!in_k[static_cast<size_t>(j)])
            throw_domain(errc::invalid_argument,
                         "i_k_term: K must contain every m_j = 1 direction (the remainder "
                         "vanishes identically there)");

    std::vector<double> x = moduli_squared(z);
    double n_fact = std::exp(std::lgamma(n + 1.0));
    double prefactor = 1.0 / n_fact;
    double a = 1.0;
    for (int j : out.K) {
        int mj = domain.m_at(j);
        prefactor *= mj * mj * std::pow(x[static_cast<size_t>(j)], mj - 1);
        a -= std::pow(x[static_cast<size_t>(j)], mj);
    }
    if (prefactor == 0.0) return out;

    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
        if (!in_k[static_cast<size_t>(j)]) rest.push_back(j);
    double tau_pow = static_cast<double>(out.K.size());
    double env = 1.0;
    int head = 1;
    for (int j : rest) {
        int mj = domain.m_at(j);
        tau_pow += 1.0 / mj;
        env *= f_envelope_bound(mj);
        head = std::lcm(head, mj);
    }

    quad::SemiInfiniteIntegrand g;
    g.f = [&](double tau) {
        double prod = 1.0;
        for (int j : rest) {
            int mj = domain.m_at(j);
            prod *= f_remainder(mj, x[static_cast<size_t>(j)] * std::pow(tau, 1.0 / mj),
                                settings.precision);
        }
        return std::exp(-a * tau) * prod * std::pow(tau, tau_pow);
    };
    g.decay_rate = a;
    g.power = tau_pow;
    g.envelope_C = env;
    g.T0 = 1.0;
    g.head_power = head;

    quad::QuadratureResult q = quad::integrate_semi_infinite(g, settings.tol, settings.max_subdivisions);
    out.value = prefactor * q.value;
    return out;
}

double monomial_norm_oracle(const EggDomain& domain, const std::vector<int>& nu,
                            const EvalSettings& settings) {
    settings.validate();
    int n = domain.n();
    if (static_cast<int>(nu.size()) != n)
        throw_domain(errc::invalid_argument, "monomial_norm_oracle: nu has wrong length");
    long total = 0;
    for (int v : nu) {
        if (v < 0) throw_domain(errc::invalid_argument, "monomial_norm_oracle: nu must be >= 0");
        total += v;
    }
    if (total > 12)
        throw_numeric(errc::budget_exhausted, "monomial_norm_oracle: |nu| > 12 is out of budget");

    // Iterated radial integrals over { rho >= 0 : sum rho_j^{2 m_j} < 1 },
    // innermost level by the exact power rule, outer levels adaptively.
    struct Level {
        const EggDomain& dom;
        const std::vector<int>& nu;
        double operator()(int j, double budget) const {
            if (budget <= 0.0) return 0.0;
            int mj = dom.m_at(j);
            int vj = nu[static_cast<size_t>(j)];
            if (j == dom.n() - 1)
                return std::pow(budget, (vj + 1.0) / mj) / (2.0 * vj + 2.0);
            double top = std::pow(budget, 1.0 / (2.0 * mj));
            auto f = [&](double rho) {
                double rem = budget - std::pow(rho * rho, mj);
                return std::pow(rho, 2 * vj + 1) * (*this)(j + 1, std::max(rem, 0.0));
            };
            return quad::integrate_adaptive(f, 0.0, top, 1e-11, 2000).value;
        }
    };
    Level level{domain, nu};
    return std::pow(2.0 * std::numbers::pi, n) * level(0, 1.0);
}

} // namespace eggkernel
