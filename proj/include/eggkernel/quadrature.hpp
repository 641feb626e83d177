#ifndef EGGKERNEL_QUADRATURE_HPP
#define EGGKERNEL_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "eggkernel/settings.hpp"

namespace eggkernel::quad {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
    double upper_limit = 0.0;  // truncation point T for semi-infinite integrals
};

// Adaptive Gauss-Kronrod (G7,K15) on [a,b], bisecting the worst panel until
// the summed error estimate drops below tol * |value| or the panel budget is
// hit (tolerance-not-met). `seeds` are optional interior breakpoints; panel
// results are re-summed in position order with compensation, so the outcome
// does not depend on refinement history.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_subdivisions,
                                    const std::vector<double>& seeds = {});

// A non-negative integrand on (0, inf) together with the envelope the caller
// certifies for it: f(tau) <= envelope_C * tau^power * e^{-decay_rate * tau}
// for tau >= T0. The envelope is what makes the tail truncation a bound
// rather than a guess.
//
// head_power k > 1 asks for the substitution tau = y^k on the initial segment
// [0, min(1,T)]; callers use it when the integrand carries fractional powers
// tau^{j/k} that are smooth in y. The choice of k does not change the value,
// only how fast the head converges.
struct SemiInfiniteIntegrand {
    std::function<double(double)> f;
    double decay_rate = 1.0;
    double power = 0.0;
    double envelope_C = 1.0;
    double T0 = 1.0;
    int head_power = 1;
};

// Truncate at T with C int_T^inf tau^p e^{-a tau} dtau <= C T^p e^{-aT} * 2/a
// (valid once T >= 2p/a) below 0.5 * tol * I, where I comes from a cheap
// first pass; then integrate [0,T] adaptively. The reported error estimate
// includes the certified tail bound.
QuadratureResult integrate_semi_infinite(const SemiInfiniteIntegrand& g, double tol,
                                         int max_subdivisions);

struct LatticeSeriesResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long terms = 0;
    int degree = 0;  // last completed total degree
};

// Sum of term(nu) >= 0 over multi-indices nu in N^n, accumulated shell by
// shell in graded (total-degree) order. Shell sums of the kernel series decay
// like poly(d) * q^d with q < 1 on the domain interior, so their ratios
// decrease toward q; once three consecutive ratios are below 1 and
// non-increasing, the remaining tail is bounded by the geometric sum at the
// largest recent ratio. Signals divergence when the ratios refuse to drop
// below 1 within the budgets (z too close to the boundary for the budget),
// tolerance-not-met when the budget ends before the bound clears tol.
LatticeSeriesResult sum_lattice_series(int n,
                                       const std::function<double(const std::vector<int>&)>& term,
                                       double tol, long max_terms, int max_degree);

} // namespace eggkernel::quad

#endif
