#include "eggkernel/egg_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eggkernel/errors.hpp"

namespace eggkernel {

namespace {

constexpr double kBoundaryTol = 1e-10;
constexpr double kZeroFloor = 1e-300;
constexpr double kDenomFloor = 1e-14;

bool component_is_zero(std::complex<double> c) {
    return std::abs(c.real()) < kZeroFloor && std::abs(c.imag()) < kZeroFloor;
}

double abs2m(std::complex<double> c, int m) {
    return std::pow(std::norm(c), m);
}

void check_point(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                 const char* who) {
    if (static_cast<int>(z.size()) != domain.n())
        throw_domain(errc::invalid_argument,
                     std::string(who) + ": point has " + std::to_string(z.size()) +
                         " components, domain has " + std::to_string(domain.n()));
    for (auto c : z)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw_domain(errc::invalid_argument, std::string(who) + ": non-finite component");
}

} // namespace

EggDomain::EggDomain(std::vector<int> exponents) : m_(std::move(exponents)) {
    if (m_.empty()) throw_domain(errc::invalid_argument, "EggDomain: needs at least one exponent");
    for (int mj : m_) {
        if (mj < 1) throw_domain(errc::invalid_argument, "EggDomain: exponents must be >= 1");
        if (mj > 64) throw_domain(errc::invalid_argument, "EggDomain: exponent above 64 unsupported");
    }
}

double EggDomain::inv_m_sum() const {
    double s = 0.0;
    for (int mj : m_) s += 1.0 / mj;
    return s;
}

int EggDomain::m_lcm() const {
    int l = 1;
    for (int mj : m_) l = std::lcm(l, mj);
    return l;
}

double EggDomain::defining_r(const std::vector<std::complex<double>>& z) const {
    check_point(*this, z, "defining_r");
    double s = 0.0;
    for (int j = 0; j < n(); ++j) s += abs2m(z[static_cast<size_t>(j)], m_[static_cast<size_t>(j)]);
    return 1.0 - s;
}

namespace {

BoundaryClassification partition(const EggDomain& domain,
                                 const std::vector<std::complex<double>>& z0) {
    BoundaryClassification cls;
    cls.z0 = z0;
    for (int j = 0; j < domain.n(); ++j) {
        bool round = domain.m_at(j) == 1;
        bool zero = component_is_zero(z0[static_cast<size_t>(j)]);
        if (round) cls.I.push_back(j);
        if (zero && !round)
            cls.P.push_back(j);
        else
            cls.Q.push_back(j);
    }
    cls.degenerate_rank = static_cast<int>(cls.P.size());
    cls.weakly_pseudoconvex = !cls.P.empty();
    return cls;
}

} // namespace

BoundaryClassification classify(const EggDomain& domain,
                                const std::vector<std::complex<double>>& z0) {
    check_point(domain, z0, "classify");
    double defect = domain.defining_r(z0);
    if (std::abs(defect) > kBoundaryTol)
        throw_domain(errc::not_on_boundary,
                     "classify: point misses the boundary by r = " + std::to_string(defect));
    return partition(domain, z0);
}

PolarPoint to_polar(const EggDomain& domain, const BoundaryClassification& cls,
                    const std::vector<std::complex<double>>& z) {
    check_point(domain, z, "to_polar");
    double r = domain.defining_r(z);
    if (!(r > 0.0))
        throw_domain(errc::invalid_argument,
                     "to_polar: point is not interior (r = " + std::to_string(r) + ")");
    double sum_q = 0.0;
    for (int j : cls.Q) sum_q += abs2m(z[static_cast<size_t>(j)], domain.m_at(j));
    double A = 1.0 - sum_q;
    if (A <= kDenomFloor)
        throw_domain(errc::degenerate_denominator,
                     "to_polar: 1 - sum_Q |z_j|^{2m_j} = " + std::to_string(A) +
                         " leaves no room for the degenerate directions");
    PolarPoint p;
    p.r = r;
    p.t.reserve(cls.P.size());
    for (int j : cls.P) {
        double frac = abs2m(z[static_cast<size_t>(j)], domain.m_at(j)) / A;
        p.t.push_back(std::pow(frac, 1.0 / (2.0 * domain.m_at(j))));
    }
    return p;
}

std::vector<std::complex<double>> from_polar(const EggDomain& domain,
                                             const BoundaryClassification& cls,
                                             const PolarPoint& polar) {
    if (polar.t.size() != cls.P.size())
        throw_domain(errc::invalid_argument, "from_polar: t has wrong length for the classification");
    double sum_p = 0.0;
    for (size_t i = 0; i < polar.t.size(); ++i) {
        double tj = polar.t[i];
        if (!(tj >= 0.0))
            throw_domain(errc::invalid_argument, "from_polar: angular coordinates must be >= 0");
        sum_p += std::pow(tj * tj, domain.m_at(cls.P[i]));
    }
    if (sum_p >= 1.0 - kDenomFloor)
        throw_domain(errc::degenerate_denominator,
                     "from_polar: sum_P t_j^{2m_j} = " + std::to_string(sum_p) +
                         " pins the point to the simplex boundary");
    double A = polar.r / (1.0 - sum_p);
    if (!(polar.r > 0.0) || A > 1.0)
        throw_domain(errc::invalid_argument,
                     "from_polar: r = " + std::to_string(polar.r) + " is outside (0, " +
                         std::to_string(1.0 - sum_p) + ")");

    // Shrink the Q components of z0 radially until the defining sum closes:
    // solve sum_Q (lambda |z0_j|)^{2m_j} = 1 - A by bisection on [0, 1].
    // The left end undershoots, lambda = 1 gives sum_Q |z0_j|^{2m_j} = 1
    // (the P entries of z0 vanish), so a root is bracketed.
    double target = 1.0 - A;
    auto sum_at = [&](double lambda) {
        double s = 0.0;
        for (int j : cls.Q)
            s += std::pow(lambda * lambda * std::norm(cls.z0[static_cast<size_t>(j)]),
                          domain.m_at(j));
        return s;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double mid = 0.5 * (lo + hi);
        (sum_at(mid) < target ? lo : hi) = mid;
    }
    double lambda = 0.5 * (lo + hi);

    std::vector<std::complex<double>> z(static_cast<size_t>(domain.n()));
    for (int j : cls.Q) z[static_cast<size_t>(j)] = lambda * cls.z0[static_cast<size_t>(j)];
    for (size_t i = 0; i < cls.P.size(); ++i) {
        int j = cls.P[i];
        z[static_cast<size_t>(j)] = polar.t[i] * std::pow(A, 1.0 / (2.0 * domain.m_at(j)));
    }
    return z;
}

bool in_admissible_region(const EggDomain& domain, const BoundaryClassification& cls,
                          const std::vector<std::complex<double>>& z, double alpha,
                          UalphaVariant variant) {
    if (!(alpha >= 1.0))
        throw_domain(errc::invalid_argument, "in_admissible_region: alpha must be >= 1");
    check_point(domain, z, "in_admissible_region");
    if (!(domain.defining_r(z) > 0.0)) return false;
    PolarPoint p;
    try {
        p = to_polar(domain, cls, z);
    } catch (const DomainError&) {
        return false;  // chart degenerates; certainly not an admissible approach
    }
    double s = 0.0;
    for (size_t i = 0; i < p.t.size(); ++i) {
        double tj = p.t[i];
        s += variant == UalphaVariant::power ? std::pow(tj * tj, domain.m_at(cls.P[i])) : tj;
    }
    return s < 1.0 / alpha;
}

BoundaryClassification simplex_boundary_classify(const EggDomain& domain,
                                                 const std::vector<double>& t) {
    if (static_cast<int>(t.size()) != domain.n())
        throw_domain(errc::invalid_argument, "simplex_boundary_classify: dimension mismatch");
    double s = 0.0;
    for (int j = 0; j < domain.n(); ++j) {
        double tj = t[static_cast<size_t>(j)];
        if (!(tj >= 0.0))
            throw_domain(errc::invalid_argument,
                         "simplex_boundary_classify: coordinates must be >= 0");
        s += std::pow(tj * tj, domain.m_at(j));
    }
    if (s < 1.0 - kBoundaryTol)
        throw_domain(errc::interior_point,
                     "simplex_boundary_classify: sum = " + std::to_string(s) +
                         " is interior, the induction terminates here");
    if (s > 1.0 + kBoundaryTol)
        throw_domain(errc::not_on_boundary,
                     "simplex_boundary_classify: sum = " + std::to_string(s) + " exceeds 1");
    std::vector<std::complex<double>> z0(t.size());
    for (size_t j = 0; j < t.size(); ++j) z0[j] = t[j];
    return partition(domain, z0);
}

} // namespace eggkernel
