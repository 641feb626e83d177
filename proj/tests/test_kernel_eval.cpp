#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "eggkernel/asymptotics.hpp"
#include "eggkernel/egg_domain.hpp"
#include "eggkernel/errors.hpp"
#include "eggkernel/kernel_eval.hpp"
#include "eggkernel/settings.hpp"

using namespace eggkernel;
using C = std::complex<double>;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Calibration is deterministic and not free; run it once for the whole binary.
const EvalSettings& calibrated() {
    static EvalSettings s = calibrate_constants(EvalSettings{}).settings;
    return s;
}

errc thrown_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return errc::invalid_argument;  // unreachable in these tests
}

constexpr double kPi = 3.141592653589793238462643383279503;

} // namespace

TEST_CASE("unit disc: integral route against the classical kernels") {
    // E_(3) is the unit disc, so the integral representation must reproduce
    // (1/pi)(1 - |z|^2)^{-2} and its boundary-weighted Szego analogue
    // (3/2pi)(1 - |z|^2)^{-1} with no calibration involved.
    EggDomain disc({3});
    EvalSettings s;  // uncalibrated on purpose
    struct Row {
        double mod, bergman, szego;
    };
    const Row rows[] = {
        {0.3, 0.38438580628401240, 0.52468662557767693},
        {0.95, 33.484274680740636, 4.8970751720583180},
    };
    for (const auto& row : rows) {
        double x = row.mod * row.mod;
        auto kb = bergman_integral(disc, {C(row.mod)}, s);
        auto ks = szego_integral(disc, {C(row.mod)}, s);
        CHECK(rel(kb.value, row.bergman) < 1e-7);
        CHECK(rel(kb.value, (1.0 / kPi) / ((1.0 - x) * (1.0 - x))) < 1e-7);
        CHECK(rel(ks.value, row.szego) < 1e-7);
        CHECK(rel(ks.value, (3.0 / (2.0 * kPi)) / (1.0 - x)) < 1e-7);
        // Certificate honesty and metadata.
        CHECK(std::abs(kb.value - row.bergman) <=
              5.0 * std::max(kb.error_estimate, 1e-9 * row.bergman));
        CHECK(kb.kernel == Kernel::bergman);
        CHECK(kb.method == Method::integral);
        CHECK(rel(kb.r, 1.0 - std::pow(x, 3)) < 1e-12);
    }
}

TEST_CASE("frozen kernel values across domains, both routes") {
    struct Row {
        std::vector<int> m;
        std::vector<C> z;
        double bergman, szego;
    };
    const Row rows[] = {
        {{1, 2}, {C(0.6), C(0.0)}, 0.46381157062837725, 0.098946468400720480},
        {{1, 2}, {C(0.0), C(0.0)}, 0.15198177546350666, 0.050660591821168886},
        {{2, 3}, {C(0.5), C(0.6)}, 0.70044364602876196, 0.24066197780385060},
    };
    for (const auto& row : rows) {
        EggDomain d(row.m);
        CHECK(rel(bergman_series(d, row.z, calibrated()).value, row.bergman) < 1e-8);
        CHECK(rel(bergman_integral(d, row.z, calibrated()).value, row.bergman) < 1e-7);
        CHECK(rel(szego_series(d, row.z, calibrated()).value, row.szego) < 1e-8);
        CHECK(rel(szego_integral(d, row.z, calibrated()).value, row.szego) < 1e-7);
    }

    // Center of m = (1,2): Bergman is 3/(2 pi^2) on the nose.
    EggDomain d12({1, 2});
    CHECK(rel(bergman_series(d12, {C(0.0), C(0.0)}, calibrated()).value,
              1.5 / (kPi * kPi)) < 1e-9);

    // n = 3 with a repeated degenerate direction.
    EggDomain d122({1, 2, 2});
    std::vector<C> z3{C(0.5), C(0.4), C(0.3)};
    CHECK(rel(bergman_series(d122, z3, calibrated()).value, 0.50560000066818247) < 5e-9);
    CHECK(rel(bergman_integral(d122, z3, calibrated()).value, 0.50560000066818247) < 5e-8);
}

TEST_CASE("series and integral agree on a grid, and phases are invisible") {
    EggDomain d({1, 2});
    for (int i = 0; i < 20; ++i) {
        double s = 0.08 + 0.77 * i / 19.0;
        double phi = 0.2 + 0.05 * i;
        std::vector<C> z{C(s * std::cos(phi)), C(s * std::sin(phi))};
        auto bs = bergman_series(d, z, calibrated());
        auto bi = bergman_integral(d, z, calibrated());
        CHECK(rel(bs.value, bi.value) < 1e-6);
        auto ss = szego_series(d, z, calibrated());
        auto si = szego_integral(d, z, calibrated());
        CHECK(rel(ss.value, si.value) < 1e-6);
    }

    EggDomain d23({2, 3});
    std::vector<C> plain{C(0.5), C(0.6)};
    std::vector<C> spun{0.5 * std::polar(1.0, 2.1), 0.6 * std::polar(1.0, -0.7)};
    CHECK(rel(bergman_series(d23, spun, calibrated()).value,
              bergman_series(d23, plain, calibrated()).value) < 1e-12);
    CHECK(rel(bergman_integral(d23, spun, calibrated()).value,
              bergman_integral(d23, plain, calibrated()).value) < 1e-12);
}

TEST_CASE("monomial norm oracle: frozen values and guards") {
    EggDomain d({1, 2});
    EvalSettings s;
    struct Row {
        int v0, v1;
        double norm;
    };
    const Row rows[] = {
        {0, 0, 6.5797362673929057},   {1, 0, 2.6318945069571623},
        {0, 1, 2.4674011002723397},   {2, 1, 0.41123351671205661},
        {1, 2, 0.37598492956530890},  {3, 3, 0.041123351671205661},
    };
    for (const auto& row : rows)
        CHECK(rel(monomial_norm_oracle(d, {row.v0, row.v1}, s), row.norm) < 1e-9);

    // Volume of E_(1,2) is 2 pi^2 / 3.
    CHECK(rel(monomial_norm_oracle(d, {0, 0}, s), 2.0 * kPi * kPi / 3.0) < 1e-10);

    CHECK(thrown_code([&] { monomial_norm_oracle(d, {7, 6}, s); }) == errc::budget_exhausted);
    CHECK(thrown_code([&] { monomial_norm_oracle(d, {1}, s); }) == errc::invalid_argument);
    CHECK(thrown_code([&] { monomial_norm_oracle(d, {-1, 0}, s); }) == errc::invalid_argument);
}

TEST_CASE("series coefficients are reciprocal monomial norms") {
    // K(z) = sum |z^nu|^2 / ||z^nu||^2. At z = (0.1, 0.1) the tail beyond
    // |nu| = 6 is below 1e-10 relative, so the oracle partial sum must meet
    // the series value.
    EggDomain d({1, 2});
    std::vector<C> z{C(0.1), C(0.1)};
    double partial = 0.0;
    for (int v0 = 0; v0 <= 6; ++v0)
        for (int v1 = 0; v0 + v1 <= 6; ++v1)
            partial += std::pow(0.01, v0 + v1) / monomial_norm_oracle(d, {v0, v1}, EvalSettings{});
    CHECK(rel(bergman_series(d, z, calibrated()).value, partial) < 1e-7);
}

TEST_CASE("subset decomposition rebuilds the Bergman kernel") {
    EvalSettings s;

    // m = (1,2): K must contain the round direction 0, leaving {0} and {0,1}.
    EggDomain d12({1, 2});
    auto cls12 = classify(d12, {C(1.0), C(0.0)});
    std::vector<C> z12{C(0.6), C(0.3)};
    double sum12 = i_k_term(d12, cls12, {0}, z12, s).value +
                   i_k_term(d12, cls12, {0, 1}, z12, s).value;
    double rebuilt12 = 2.0 / (kPi * kPi) * sum12;
    CHECK(rel(rebuilt12, bergman_integral(d12, z12, s).value) < 1e-6);

    // m = (2,3): no forced indices, all four subsets contribute.
    EggDomain d23({2, 3});
    auto cls23 = classify(d23, {C(0.0), C(1.0)});
    std::vector<C> z23{C(0.5), C(0.6)};
    double sum23 = 0.0;
    for (const std::vector<int>& K :
         {std::vector<int>{}, {0}, {1}, {0, 1}})
        sum23 += i_k_term(d23, cls23, K, z23, s).value;
    CHECK(rel(2.0 / (kPi * kPi) * sum23, bergman_integral(d23, z23, s).value) < 1e-6);

    // K = N has no remainder factors left: closed form
    // prod m_j^2 |z_j|^{2(m_j-1)} / r^{n+1}.
    double r12 = d12.defining_r(z12);
    double closed = (1.0 * 1.0) * (4.0 * 0.09) / std::pow(r12, 3);
    CHECK(rel(i_k_term(d12, cls12, {0, 1}, z12, s).value, closed) < 1e-7);

    // A vanishing prefactor short-circuits to exactly zero.
    CHECK(i_k_term(d23, cls23, {0}, {C(0.0), C(0.6)}, s).value == 0.0);

    CHECK(thrown_code([&] { i_k_term(d12, cls12, {1}, z12, s); }) == errc::invalid_argument);
    CHECK(thrown_code([&] { i_k_term(d12, cls12, {0, 0}, z12, s); }) == errc::invalid_argument);
    CHECK(thrown_code([&] { i_k_term(d12, cls12, {0, 5}, z12, s); }) == errc::invalid_argument);
    CHECK(thrown_code([&] { i_k_term(d12, cls12, {0}, {C(1.0), C(0.5)}, s); }) ==
          errc::divergence);
}

TEST_CASE("refusals near and past the boundary") {
    EggDomain d({1, 2});
    auto at_r = [](double r) { return std::vector<C>{C(std::sqrt(1.0 - r)), C(0.0)}; };

    CHECK(thrown_code([&] { bergman_series(d, at_r(5e-5), calibrated()); }) == errc::divergence);
    CHECK(thrown_code([&] { szego_series(d, at_r(5e-5), calibrated()); }) == errc::divergence);
    CHECK(thrown_code([&] { bergman_series(d, at_r(0.0), calibrated()); }) == errc::divergence);
    CHECK(thrown_code([&] { bergman_series(d, {C(1.1), C(0.0)}, calibrated()); }) ==
          errc::divergence);
    CHECK(thrown_code([&] { bergman_integral(d, at_r(5e-7), calibrated()); }) ==
          errc::tolerance_not_met);
    CHECK(thrown_code([&] { bergman_integral(d, at_r(0.0), calibrated()); }) == errc::divergence);

    // Series methods refuse to run with unmeasured constants.
    EvalSettings blank;
    CHECK_FALSE(blank.calibrated());
    CHECK(thrown_code([&] { bergman_series(d, at_r(0.5), blank); }) == errc::calibration_missing);
    CHECK(thrown_code([&] { szego_series(d, at_r(0.5), blank); }) == errc::calibration_missing);
    // The integral routes never need the stamp.
    CHECK_NOTHROW(bergman_integral(d, at_r(0.5), blank));
}

TEST_CASE("calibration report: two routes, one constant") {
    auto rep = calibrate_constants(EvalSettings{});
    CHECK(rel(rep.series_ratio_monomial, 2.0) < 1e-6);
    CHECK(std::abs(rep.series_ratio_disc / rep.series_ratio_monomial - 1.0) < 1e-6);
    CHECK(std::abs(rep.closed_ratio_bergman - 0.5) < 1e-6);
    CHECK(std::abs(rep.closed_ratio_szego - 1.0) < 1e-6);
    CHECK(rep.settings.calibrated());
    CHECK(rep.settings.series_constant_c == rep.series_ratio_monomial);
    CHECK(rep.settings.digest() == rep.settings.digest());
    // The stamp changes the digest: uncalibrated and calibrated settings are
    // distinguishable downstream.
    CHECK(rep.settings.digest() != EvalSettings{}.digest());
}
