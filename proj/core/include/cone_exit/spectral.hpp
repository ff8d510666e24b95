#pragma once

#include <cstddef>

namespace cone_exit {

/// Stopping rule shared by every truncated series in the library.
struct SeriesTolerance {
    double rel_tol = 1e-12;
    std::size_t max_terms = 1'000'000;

    void validate() const;
};

/// Dirichlet eigen-data of the spherical section of a cone.
struct EigenData {
    int j = 1;
    double lambda = 0.0;
    double alpha = 0.0;  // sqrt(lambda + (d/2 - 1)^2)
    double p = 0.0;      // alpha - (d/2 - 1)
    double beta = 0.0;   // wedge angle (0 when not derived from a wedge)
    int d = 2;
};

/// alpha_j and p_j from a Dirichlet eigenvalue in ambient dimension d.
EigenData eigen_from_eigenvalue(int j, double lambda, int d);

/// Wedge of angle beta: lambda_j = (j pi / beta)^2, alpha_j = p_j = j pi / beta.
EigenData eigen_2d(double beta, int j);

/// L²(0, beta)-orthonormal eigenfunction sqrt(2/beta) sin(j pi theta / beta).
/// Zero at the endpoints; DomainError outside [0, beta].
double eigenfunction_m(double beta, int j, double theta);

/// d/dθ of eigenfunction_m.
double eigenfunction_m_derivative(double beta, int j, double theta);

/// Modified Bessel function I_nu(x) for nu >= 0, x >= 0 by its ascending series.
/// Overflows to +inf for very large x; use log_bessel_i there.
double bessel_i(double nu, double x, const SeriesTolerance& tol = {});

/// log I_nu(x), accumulated in log space. Returns -inf when x = 0 and nu > 0.
double log_bessel_i(double nu, double x, const SeriesTolerance& tol = {});

/// Exponentially scaled e^{-x} I_nu(x).
double bessel_i_scaled(double nu, double x, const SeriesTolerance& tol = {});

/// log Gamma(z) for z > 0 (Lanczos, g = 7).
double log_gamma(double z);

}  // namespace cone_exit
