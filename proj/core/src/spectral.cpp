#include "cone_exit/spectral.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cone_exit/errors.hpp"
#include "cone_exit/geometry.hpp"
#include "real_traits.hpp"

namespace cone_exit {

namespace detail {

double lanczos_log_gamma(double z) {
    // Godfrey's coefficients for g = 7, n = 9.
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z < 0.5) {
        // Reflection keeps the rational part away from its pole at z = 0.
        return std::log(kPi / std::sin(kPi * z)) - lanczos_log_gamma(1.0 - z);
    }
    z -= 1.0;
    double acc = c[0];
    for (int i = 1; i < 9; ++i) acc += c[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace detail

void SeriesTolerance::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("series rel_tol must be positive");
    if (max_terms < 1) throw DomainError("series max_terms must be at least 1");
}

double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw DomainError("log_gamma requires z > 0, got " + std::to_string(z));
    }
    return detail::lanczos_log_gamma(z);
}

EigenData eigen_from_eigenvalue(int j, double lambda, int d) {
    if (j < 1) throw DomainError("eigen index must be >= 1");
    if (d < 1) throw DomainError("dimension must be >= 1");
    if (!(lambda >= 0.0)) throw DomainError("eigenvalue must be non-negative");
    const double shift = 0.5 * d - 1.0;
    EigenData e;
    e.j = j;
    e.lambda = lambda;
    e.alpha = std::sqrt(lambda + shift * shift);
    e.p = e.alpha - shift;
    e.d = d;
    return e;
}

EigenData eigen_2d(double beta, int j) {
    if (!(beta > 0.0) || !(beta < kTwoPi)) throw DomainError("wedge angle must lie in (0, 2*pi)");
    if (j < 1) throw DomainError("eigen index must be >= 1");
    const double a = j * kPi / beta;
    EigenData e;
    e.j = j;
    e.lambda = a * a;
    e.alpha = a;
    e.p = a;
    e.beta = beta;
    e.d = 2;
    return e;
}

double eigenfunction_m(double beta, int j, double theta) {
    if (!(beta > 0.0) || !(beta < kTwoPi)) throw DomainError("wedge angle must lie in (0, 2*pi)");
    if (j < 1) throw DomainError("eigen index must be >= 1");
    if (theta < 0.0 || theta > beta) throw DomainError("theta outside [0, beta]");
    if (theta == 0.0 || theta == beta) return 0.0;
    return std::sqrt(2.0 / beta) * std::sin(j * kPi * theta / beta);
}

double eigenfunction_m_derivative(double beta, int j, double theta) {
    if (theta < 0.0 || theta > beta) throw DomainError("theta outside [0, beta]");
    const double k = j * kPi / beta;
    return std::sqrt(2.0 / beta) * k * std::cos(k * theta);
}

double log_bessel_i(double nu, double x, const SeriesTolerance& tol) {
    tol.validate();
    if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(nu) || !std::isfinite(x)) {
        throw DomainError("bessel_i requires nu >= 0 and x >= 0");
    }
    double out = 0.0;
    if (!detail::log_bessel_i_series<double>(nu, x, tol.rel_tol, tol.max_terms, out)) {
        throw SeriesNotConverged("bessel_i series did not converge for nu=" + std::to_string(nu) +
                                     ", x=" + std::to_string(x),
                                 std::numeric_limits<double>::infinity());
    }
    return out;
}

double bessel_i(double nu, double x, const SeriesTolerance& tol) {
    if (x == 0.0 && nu >= 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return std::exp(log_bessel_i(nu, x, tol));
}

double bessel_i_scaled(double nu, double x, const SeriesTolerance& tol) {
    if (x == 0.0 && nu >= 0.0) return nu == 0.0 ? 1.0 : 0.0;
    return std::exp(log_bessel_i(nu, x, tol) - x);
}

}  // namespace cone_exit
