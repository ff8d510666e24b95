#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "cone_exit/errors.hpp"
#include "cone_exit/spectral.hpp"
#include "test_support.hpp"

using namespace cone_exit;
using test_support::rel_diff;

namespace {

// I_0(1) from 50 terms of Σ (1/4)^m / (m!)² in 50-digit arithmetic.
double bessel_i0_at_one_oracle() {
    using boost::multiprecision::cpp_bin_float_50;
    cpp_bin_float_50 sum = 0, term = 1;
    for (int m = 0; m < 50; ++m) {
        sum += term;
        term /= cpp_bin_float_50(4 * (m + 1) * (m + 1));
    }
    return static_cast<double>(sum);
}

double trapezoid_inner(double beta, int i, int j, int n) {
    double s = 0.0;
    for (int k = 1; k < n; ++k) {
        const double th = beta * k / n;
        s += eigenfunction_m(beta, i, th) * eigenfunction_m(beta, j, th);
    }
    return s * beta / n;
}

}  // namespace

TEST_CASE("eigenvalue examples") {
    const EigenData q = eigen_2d(kPi / 2, 1);
    CHECK(q.alpha == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.p == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.lambda == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(eigen_2d(kPi, 1).alpha == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eigen_2d(2 * kPi / 3, 3).alpha == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("eigen data from an eigenvalue in higher dimension") {
    const EigenData e = eigen_from_eigenvalue(1, 3.0, 3);
    CHECK(e.alpha == doctest::Approx(std::sqrt(3.0 + 0.25)).epsilon(1e-15));
    CHECK(e.p == doctest::Approx(std::sqrt(3.25) - 0.5).epsilon(1e-15));
    CHECK_THROWS_AS(eigen_from_eigenvalue(0, 1.0, 2), DomainError);
    CHECK_THROWS_AS(eigen_from_eigenvalue(1, -1.0, 2), DomainError);
}

TEST_CASE("eigenfunction examples") {
    CHECK(eigenfunction_m(kPi, 1, kPi / 2) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-15));
    for (double beta : {0.3, 1.0, 2.0, 4.0, 6.0}) CHECK(std::abs(eigenfunction_m(beta, 2, beta / 2)) < 1e-15);
    CHECK(eigenfunction_m(kPi / 2, 1, kPi / 4) == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-15));
    CHECK(eigenfunction_m(1.0, 1, 0.0) == 0.0);
    CHECK(std::abs(eigenfunction_m(1.0, 3, 1.0)) < 1e-15);
    CHECK_THROWS_AS(eigenfunction_m(1.0, 1, 1.5), DomainError);
    CHECK_THROWS_AS(eigenfunction_m(1.0, 1, -0.1), DomainError);
}

TEST_CASE("eigenfunctions are orthonormal") {
    for (double beta : {kPi / 2, 2 * kPi / 3, 4.0}) {
        for (int i = 1; i <= 8; ++i) {
            for (int j = 1; j <= 8; ++j) {
                CHECK(std::abs(trapezoid_inner(beta, i, j, 4096) - (i == j ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
}

TEST_CASE("eigenfunction derivative matches a central difference") {
    const double beta = 2.2, h = 1e-6;
    for (int j = 1; j <= 5; ++j) {
        for (double th : {0.3, 1.1, 1.9}) {
            const double fd = (eigenfunction_m(beta, j, th + h) - eigenfunction_m(beta, j, th - h)) / (2 * h);
            CHECK(eigenfunction_m_derivative(beta, j, th) == doctest::Approx(fd).epsilon(1e-8));
        }
    }
}

TEST_CASE("bessel examples") {
    CHECK(bessel_i(0.0, 0.0) == 1.0);
    CHECK(bessel_i(2.5, 0.0) == 0.0);
    const SeriesTolerance tight{1e-17};
    CHECK(bessel_i(0.5, 1.0) == doctest::Approx(std::sqrt(2.0 / kPi) * std::sinh(1.0)).epsilon(1e-12));
    CHECK(bessel_i(0.5, 1.0, tight) == doctest::Approx(std::sqrt(2.0 / kPi) * std::sinh(1.0)).epsilon(1e-15));
    CHECK(bessel_i(0.5, 1.0) == doctest::Approx(0.9376748882).epsilon(1e-9));
    const double i0 = bessel_i0_at_one_oracle();
    CHECK(bessel_i(0.0, 1.0, tight) == doctest::Approx(i0).epsilon(1e-15));
    CHECK(i0 == doctest::Approx(1.2660658).epsilon(1e-7));
    CHECK_THROWS_AS(bessel_i(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_i(1.0, -1.0), DomainError);
}

TEST_CASE("bessel agrees with the standard library") {
    for (double nu : {0.0, 0.5, 1.0, 1.5, 2.7, 6.0, 20.0}) {
        for (double x : {1e-3, 0.1, 1.0, 7.0, 30.0, 200.0}) {
            CHECK(rel_diff(bessel_i(nu, x), std::cyl_bessel_i(nu, x)) < 1e-12);
        }
    }
}

TEST_CASE("scaled and log bessel are consistent") {
    for (double nu : {0.0, 1.5, 4.0}) {
        for (double x : {0.5, 10.0, 600.0}) {
            CHECK(rel_diff(std::exp(log_bessel_i(nu, x) - x), bessel_i_scaled(nu, x)) < 1e-12);
        }
    }
    // Far beyond the range of double without scaling.
    const double big = bessel_i_scaled(3.0, 5000.0);
    CHECK(big == doctest::Approx(1.0 / std::sqrt(2 * kPi * 5000.0) * (1 - (36 - 1) / (8 * 5000.0))).epsilon(1e-6));
}

TEST_CASE("bessel three-term recurrence") {
    test_support::Rng rng(3);
    for (int i = 0; i < 400; ++i) {
        const double nu = rng.uniform(1.0, 20.0);
        const double x = rng.uniform(0.1, 50.0);
        const double lhs = bessel_i(nu - 1, x) - bessel_i(nu + 1, x);
        const double rhs = 2 * nu / x * bessel_i(nu, x);
        CHECK(rel_diff(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("bessel small-argument law") {
    const double x = 1e-4;
    for (double nu : {0.5, 1.0, 2.0, 5.0}) {
        const double r = bessel_i(nu, x) * std::pow(2.0, nu) * std::tgamma(nu + 1) / std::pow(x, nu);
        CHECK(std::abs(r - 1.0) < 1e-6);
    }
}

TEST_CASE("log gamma examples") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
    double g = std::sqrt(kPi);
    for (double z = 0.5; z < 7.5; z += 1.0) g *= z;
    CHECK(log_gamma(7.5) == doctest::Approx(std::log(g)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
}

TEST_CASE("log gamma accuracy on (0, 200]") {
    for (int i = 1; i <= 2000; ++i) {
        const double z = 0.1 * i;
        const double ref = std::lgamma(z);
        if (std::abs(ref) < 1e-2) {
            CHECK(std::abs(log_gamma(z) - ref) < 1e-14);
        } else {
            CHECK(rel_diff(log_gamma(z), ref) < 1e-13);
        }
    }
    CHECK(rel_diff(log_gamma(1e-3), std::lgamma(1e-3)) < 1e-13);
}
