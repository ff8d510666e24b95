#pragma once

// Scalar-generic math used by the series kernels. The wedge eigen-series cancels
// badly far from the diagonal, so the kernel re-runs it in binary128 when the
// double-precision result cannot meet the requested relative tolerance.

#include <quadmath.h>

#include <cmath>
#include <limits>

namespace cone_exit::detail {

using quad = __float128;

double lanczos_log_gamma(double z);

template <class Real>
struct RealOps;

template <>
struct RealOps<double> {
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double abs(double x) { return std::fabs(x); }
    static double lgamma(double x) { return lanczos_log_gamma(x); }
    static double pi() { return 3.141592653589793238462643383279502884; }
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static double big() { return 1e280; }
};

template <>
struct RealOps<quad> {
    static quad exp(quad x) { return expq(x); }
    static quad log(quad x) { return logq(x); }
    static quad sin(quad x) { return sinq(x); }
    static quad cos(quad x) { return cosq(x); }
    static quad sqrt(quad x) { return sqrtq(x); }
    static quad abs(quad x) { return fabsq(x); }
    static quad lgamma(quad x) { return lgammaq(x); }
    static quad pi() { return acosq(quad(-1)); }
    static quad epsilon() { return scalbnq(quad(1), -112); }
    static quad big() { return 1e280; }
};

/// log I_nu(x) by the ascending series with periodic rescaling.
/// Returns false if max_terms was exhausted; `out` then holds the partial value.
template <class Real>
bool log_bessel_i_series(Real nu, Real x, double rel_tol, std::size_t max_terms, Real& out) {
    using Ops = RealOps<Real>;
    if (x == Real(0)) {
        out = (nu == Real(0)) ? Real(0) : -Real(std::numeric_limits<double>::infinity());
        return true;
    }
    const Real lead = nu * Ops::log(x / Real(2)) - Ops::lgamma(nu + Real(1));
    const Real q = x * x / Real(4);
    Real term = 1;
    Real sum = 1;
    Real offset = 0;
    const Real tol = Real(rel_tol);
    for (std::size_t m = 1; m <= max_terms; ++m) {
        const Real r = q / (Real(m) * (nu + Real(m)));
        term *= r;
        sum += term;
        if (sum > Ops::big()) {
            sum /= Ops::big();
            term /= Ops::big();
            offset += Ops::log(Ops::big());
        }
        if (r < Real(1)) {
            const Real tail = term * r / (Real(1) - r);
            if (tail <= tol * sum) {
                out = lead + offset + Ops::log(sum);
                return true;
            }
        }
    }
    out = lead + offset + Ops::log(sum);
    return false;
}

}  // namespace cone_exit::detail
