#ifndef EGGKERNEL_DD_HPP
#define EGGKERNEL_DD_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace eggkernel {

// Double-double value: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 31 significant decimal digits. Used by the extended
// precision mode of the special-function evaluations, where the remainder
// f_m is obtained by subtracting an e^{u^m}-sized leading term and plain
// doubles run out of digits. Error-free primitives follow Dekker/Knuth;
// two_prod relies on a correctly rounded std::fma.
struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

struct Pair {
    double s;
    double e;
};

inline Pair two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

// Requires |a| >= |b| (or a == 0).
inline Pair quick_two_sum(double a, double b) {
    double s = a + b;
    double e = b - (s - a);
    return {s, e};
}

inline Pair two_prod(double a, double b) {
    double p = a * b;
    double e = std::fma(a, b, -p);
    return {p, e};
}

} // namespace dd_detail

inline DD dd_add(const DD& x, const DD& y) {
    using namespace dd_detail;
    Pair s = two_sum(x.hi, y.hi);
    Pair t = two_sum(x.lo, y.lo);
    s.e += t.s;
    s = quick_two_sum(s.s, s.e);
    s.e += t.e;
    s = quick_two_sum(s.s, s.e);
    return {s.s, s.e};
}

inline DD dd_add(const DD& x, double y) {
    using namespace dd_detail;
    Pair s = two_sum(x.hi, y);
    s.e += x.lo;
    s = quick_two_sum(s.s, s.e);
    return {s.s, s.e};
}

inline DD dd_neg(const DD& x) { return {-x.hi, -x.lo}; }

inline DD dd_sub(const DD& x, const DD& y) { return dd_add(x, dd_neg(y)); }
inline DD dd_sub(const DD& x, double y) { return dd_add(x, -y); }

inline DD dd_mul(const DD& x, const DD& y) {
    using namespace dd_detail;
    Pair p = two_prod(x.hi, y.hi);
    p.e += x.hi * y.lo + x.lo * y.hi;
    p = quick_two_sum(p.s, p.e);
    return {p.s, p.e};
}

inline DD dd_mul(const DD& x, double y) {
    using namespace dd_detail;
    Pair p = two_prod(x.hi, y);
    p.e += x.lo * y;
    p = quick_two_sum(p.s, p.e);
    return {p.s, p.e};
}

inline DD dd_div(const DD& x, const DD& y) {
    using namespace dd_detail;
    double q1 = x.hi / y.hi;
    DD r = dd_sub(x, dd_mul(y, q1));
    double q2 = r.hi / y.hi;
    r = dd_sub(r, dd_mul(y, q2));
    double q3 = r.hi / y.hi;
    Pair s = quick_two_sum(q1, q2);
    DD q{s.s, s.e};
    return dd_add(q, q3);
}

inline DD dd_div(const DD& x, double y) { return dd_div(x, DD(y)); }

inline DD operator+(const DD& a, const DD& b) { return dd_add(a, b); }
inline DD operator+(const DD& a, double b) { return dd_add(a, b); }
inline DD operator+(double a, const DD& b) { return dd_add(b, a); }
inline DD operator-(const DD& a) { return dd_neg(a); }
inline DD operator-(const DD& a, const DD& b) { return dd_sub(a, b); }
inline DD operator-(const DD& a, double b) { return dd_sub(a, b); }
inline DD operator-(double a, const DD& b) { return dd_add(dd_neg(b), a); }
inline DD operator*(const DD& a, const DD& b) { return dd_mul(a, b); }
inline DD operator*(const DD& a, double b) { return dd_mul(a, b); }
inline DD operator*(double a, const DD& b) { return dd_mul(b, a); }
inline DD operator/(const DD& a, const DD& b) { return dd_div(a, b); }
inline DD operator/(const DD& a, double b) { return dd_div(a, DD(b)); }
inline DD operator/(double a, const DD& b) { return dd_div(DD(a), b); }

inline bool operator<(const DD& a, const DD& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }

inline DD dd_abs(const DD& x) { return x.hi < 0.0 ? dd_neg(x) : x; }

inline DD dd_ldexp(const DD& x, int k) {
    return {std::ldexp(x.hi, k), std::ldexp(x.lo, k)};
}

// Constants to full double-double accuracy (hi = nearest double, lo = nearest
// double of the remainder; generated by tools/gen_reference_values.py).
inline DD dd_pi() { return {3.141592653589793, 1.2246467991473532e-16}; }
inline DD dd_ln2() { return {0.6931471805599453, 2.3190468138462996e-17}; }
inline DD dd_sqrt_pi() { return {1.772453850905516, -7.666586499825799e-17}; }

inline DD dd_sqrt(const DD& x) {
    if (x.hi == 0.0) return DD(0.0);
    double y = std::sqrt(x.hi);
    // One Newton step in double-double lifts the double seed to ~31 digits.
    DD r = dd_sub(x, dd_mul(DD(y), y));
    return dd_add(DD(y), dd_div(r, DD(2.0 * y)));
}

inline DD dd_pow_int(DD x, int n) {
    if (n == 0) return DD(1.0);
    DD acc(1.0);
    for (; n > 0; n >>= 1) {
        if (n & 1) acc = dd_mul(acc, x);
        if (n > 1) x = dd_mul(x, x);
    }
    return acc;
}

// exp for |x| < ~709, via x = k ln2 + s with |s| <= ln2/2 and a Taylor tail
// whose terms fall below 1e-35 by degree 25.
inline DD dd_exp(const DD& x) {
    if (x.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
    if (x.hi < -745.0) return DD(0.0);
    double k = std::nearbyint(x.hi / 0.6931471805599453);
    DD s = dd_sub(x, dd_mul(dd_ln2(), k));
    DD sum(1.0);
    DD term(1.0);
    for (int i = 1; i <= 25; ++i) {
        term = dd_div(dd_mul(term, s), static_cast<double>(i));
        sum = dd_add(sum, term);
    }
    return dd_ldexp(sum, static_cast<int>(k));
}

// log via Newton on exp: y <- y + x e^{-y} - 1, two steps from a double seed.
inline DD dd_log(const DD& x) {
    DD y(std::log(x.hi));
    for (int i = 0; i < 2; ++i) {
        DD e = dd_exp(dd_neg(y));
        y = dd_add(y, dd_sub(dd_mul(x, e), 1.0));
    }
    return y;
}

} // namespace eggkernel

#endif
