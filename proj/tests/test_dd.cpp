#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eggkernel/dd.hpp"

using namespace eggkernel;

namespace {

// Relative gap measured in double-double arithmetic itself, so differences
// far below 1e-16 remain visible.
double rel_gap(const DD& approx, const DD& exact) {
    double d = std::abs(static_cast<double>(dd_sub(approx, exact)));
    double scale = std::abs(static_cast<double>(exact));
    return scale == 0.0 ? d : d / scale;
}

} // namespace

TEST_CASE("dd keeps the digits double drops") {
    CHECK(1.0 + 1e-17 == 1.0);  // the comparison point
    DD x = dd_add(DD(1.0), 1e-17);
    CHECK(x.hi == 1.0);
    CHECK(x.lo == 1e-17);
    CHECK(static_cast<double>(dd_sub(x, 1.0)) == 1e-17);
}

TEST_CASE("frozen constants match the 50-digit oracle") {
    CHECK(dd_pi().hi == 3.141592653589793);
    CHECK(dd_pi().lo == 1.2246467991473532e-16);
    CHECK(dd_ln2().hi == 0.6931471805599453);
    CHECK(dd_ln2().lo == 2.3190468138462996e-17);
    CHECK(dd_sqrt_pi().hi == 1.772453850905516);
    CHECK(dd_sqrt_pi().lo == -7.666586499825799e-17);

    CHECK(rel_gap(dd_mul(dd_sqrt_pi(), dd_sqrt_pi()), dd_pi()) < 1e-31);
    CHECK(rel_gap(dd_sqrt(dd_pi()), dd_sqrt_pi()) < 1e-31);
    CHECK(rel_gap(dd_exp(dd_ln2()), DD(2.0)) < 1e-30);
    CHECK(rel_gap(dd_log(DD(2.0)), dd_ln2()) < 1e-30);
}

TEST_CASE("arithmetic round-trips at double-double accuracy") {
    std::mt19937_64 rng(20260814u);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        DD a(u(rng), u(rng) * 1e-18);
        DD b(u(rng), u(rng) * 1e-18);
        if (std::abs(a.hi) < 1e-3 || std::abs(b.hi) < 1e-3) continue;
        CHECK(rel_gap(dd_sub(dd_add(a, b), b), a) < 1e-28);
        CHECK(rel_gap(dd_mul(dd_div(a, b), b), a) < 1e-28);
    }
}

TEST_CASE("exp and log are mutual inverses") {
    for (double v : {-5.0, -1.0, -0.1, 0.0, 0.3, 1.0, 3.7, 20.0, 100.0}) {
        DD x(v);
        CHECK(rel_gap(dd_log(dd_exp(x)), x) < (v == 0.0 ? 1e-30 : 1e-28));
    }
    CHECK(static_cast<double>(dd_exp(DD(0.0))) == 1.0);
    CHECK(std::isinf(dd_exp(DD(800.0)).hi));
    CHECK(static_cast<double>(dd_exp(DD(-800.0))) == 0.0);
    // e^x e^{-x} = 1 stresses both rounding directions.
    for (double v : {0.7, 5.0, 42.0}) {
        CHECK(rel_gap(dd_mul(dd_exp(DD(v)), dd_exp(DD(-v))), DD(1.0)) < 1e-29);
    }
}

TEST_CASE("integer powers and scaling") {
    CHECK(static_cast<double>(dd_pow_int(DD(3.0), 5)) == 243.0);
    CHECK(dd_pow_int(DD(3.0), 5).lo == 0.0);  // exact in one double
    CHECK(static_cast<double>(dd_pow_int(DD(2.0), 0)) == 1.0);
    DD x(1.7, 3e-17);
    CHECK(rel_gap(dd_pow_int(x, 7), dd_exp(dd_mul(dd_log(x), 7.0))) < 1e-28);
    DD s = dd_ldexp(dd_pi(), 3);
    CHECK(s.hi == 8.0 * dd_pi().hi);
    CHECK(s.lo == 8.0 * dd_pi().lo);
}

TEST_CASE("sqrt via Newton step") {
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> u(1e-6, 1e6);
    for (int i = 0; i < 200; ++i) {
        DD x(u(rng));
        DD r = dd_sqrt(x);
        CHECK(rel_gap(dd_mul(r, r), x) < 1e-29);
    }
    CHECK(static_cast<double>(dd_sqrt(DD(0.0))) == 0.0);
}
