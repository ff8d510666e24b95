#include <doctest.h>

#include <array>
#include <cmath>

#include "cone_exit/errors.hpp"
#include "cone_exit/kernel.hpp"
#include "cone_exit/survival.hpp"
#include "test_support.hpp"

using namespace cone_exit;
using test_support::phi;
using test_support::polar;
using test_support::rel_diff;

namespace {

double halfline_oracle(double t, double x, double y) { return phi(t, x - y) - phi(t, x + y); }

double quarter_oracle(double t, Vec2 x, Vec2 y) {
    return halfline_oracle(t, x.x, y.x) * halfline_oracle(t, x.y, y.y);
}

// Richardson-extrapolated difference quotient of the kernel at time 1 along the inward normal.
// The kernel is odd in the signed normal offset, so D(h) = f(h)/h has an even error expansion.
double normal_derivative_fd(const Wedge& w, Vec2 x, Vec2 a) {
    const Vec2 n = inward_normal(w, a);
    const double h = 1e-3;
    auto quotient = [&](double s) { return heat_kernel_wedge(w, 1.0, x, a + s * n) / s; };
    return (4.0 * quotient(h / 2) - quotient(h)) / 3.0;
}

}  // namespace

TEST_CASE("half-line kernel examples") {
    CHECK(heat_kernel_halfline(1, 1, 1) == doctest::Approx((1 - std::exp(-2.0)) / std::sqrt(2 * kPi)).epsilon(1e-15));
    CHECK(heat_kernel_halfline(0.7, 0.3, 1.9) == heat_kernel_halfline(0.7, 1.9, 0.3));
    CHECK(heat_kernel_halfline(1.0, 1e-9, 1.0) < 1e-8);
    CHECK_THROWS_AS(heat_kernel_halfline(1.0, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS(heat_kernel_halfline(0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("quarter kernel examples") {
    test_support::Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        const double t = rng.uniform(0.3, 4.0);
        const Vec2 x{rng.uniform(0.05, 3), rng.uniform(0.05, 3)};
        const Vec2 y{rng.uniform(0.05, 3), rng.uniform(0.05, 3)};
        KernelSpec j64;
        j64.truncation = 64;
        CHECK(rel_diff(heat_kernel_quarter(t, x, y), heat_kernel_wedge(Wedge(kPi / 2), t, x, y, j64)) < 1e-10);
        CHECK(rel_diff(heat_kernel_quarter(t, x, y), quarter_oracle(t, x, y)) < 1e-14);
    }
    // Far from both axes only the free Gaussian survives.
    const Vec2 x{40, 50}, y{40.5, 49.2};
    const double free = phi(1.0, 0.5) * phi(1.0, 0.8);
    CHECK(rel_diff(heat_kernel_quarter(1.0, x, y), free) < 1e-13);
    CHECK(heat_kernel_quarter(1.0, Vec2{1e-10, 1}, Vec2{1, 1}) < 1e-9);
}

TEST_CASE("wedge kernel equals the quarter product on the quarter plane") {
    const Wedge q(kPi / 2);
    const Vec2 x = polar(1.0, kPi / 4);
    CHECK(rel_diff(heat_kernel_wedge(q, 1.0, x, x), quarter_oracle(1.0, x, x)) < 1e-10);
}

TEST_CASE("half-plane example") {
    const Wedge h(kPi);
    const double expected = phi(1, 0) * (phi(1, 0) - phi(1, 2));
    const double got = heat_kernel_wedge(h, 1.0, Vec2{0, 1}, Vec2{0, 1});
    CHECK(rel_diff(got, expected) < 1e-12);
    KernelSpec product;
    product.backend = KernelBackend::HalfLine;
    CHECK(rel_diff(heat_kernel_wedge(h, 1.0, Vec2{0, 1}, Vec2{0, 1}, product), expected) < 1e-15);
}

TEST_CASE("cross-backend agreement on a random grid") {
    test_support::Rng rng(23);
    KernelSpec quarter_spec, half_spec;
    quarter_spec.backend = KernelBackend::QuarterProduct;
    half_spec.backend = KernelBackend::HalfLine;
    double worst_q = 0.0, worst_h = 0.0;
    for (int i = 0; i < 300; ++i) {
        const double t = rng.uniform(0.5, 5.0);
        const Vec2 xq = polar(rng.uniform(0.01, 3), rng.uniform(0.0, kPi / 2));
        const Vec2 yq = polar(rng.uniform(0.01, 3), rng.uniform(0.0, kPi / 2));
        const Wedge q(kPi / 2);
        const double sq = heat_kernel_wedge(q, t, xq, yq), pq = heat_kernel_wedge(q, t, xq, yq, quarter_spec);
        if (pq > 1e-250) worst_q = std::max(worst_q, rel_diff(sq, pq));
        const Vec2 xh = polar(rng.uniform(0.01, 3), rng.uniform(0.0, kPi));
        const Vec2 yh = polar(rng.uniform(0.01, 3), rng.uniform(0.0, kPi));
        const Wedge h(kPi);
        const double sh = heat_kernel_wedge(h, t, xh, yh), ph = heat_kernel_wedge(h, t, xh, yh, half_spec);
        if (ph > 1e-250) worst_h = std::max(worst_h, rel_diff(sh, ph));
    }
    CHECK(worst_q < 1e-8);
    CHECK(worst_h < 1e-8);
}

TEST_CASE("kernel symmetry, boundary zero and rotation invariance") {
    test_support::Rng rng(29);
    for (int i = 0; i < 100; ++i) {
        const Wedge w(rng.uniform(0.3, 6.0), rng.uniform(-kPi, kPi));
        const double t = rng.uniform(0.1, 4.0);
        const Vec2 x = w.from_canonical(polar(rng.uniform(0.1, 3), rng.uniform(0.01, 0.99) * w.beta()));
        const Vec2 y = w.from_canonical(polar(rng.uniform(0.1, 3), rng.uniform(0.01, 0.99) * w.beta()));
        const double pxy = heat_kernel_wedge(w, t, x, y);
        CHECK(pxy == heat_kernel_wedge(w, t, y, x));
        CHECK(pxy >= 0.0);
        CHECK(heat_kernel_wedge(w, t, x, w.from_canonical(polar(1.3, 0.0))) == 0.0);
        CHECK(heat_kernel_wedge(w, t, x, w.from_canonical(polar(1.3, w.beta()))) == 0.0);
        CHECK(heat_kernel_wedge(w, t, x, Vec2{0, 0}) == 0.0);
        const double phi_rot = rng.uniform(-3, 3);
        const Wedge r = w.rotated(phi_rot);
        CHECK(rel_diff(heat_kernel_wedge(r, t, rotate(x, phi_rot), rotate(y, phi_rot)), pxy) < 1e-11);
    }
    CHECK_THROWS_AS(heat_kernel_wedge(Wedge(1.0), 1.0, polar(1, 0.5), polar(1, 2.0)), DomainError);
}

TEST_CASE("series row reproduces the kernel") {
    const double beta = 2.3, t = 0.8;
    const Vec2 x = polar(1.4, 0.7), y = polar(0.9, 1.8);
    const double z = 1.4 * 0.9 / t;
    const WedgeSeriesRow row(beta, 0.7, z, SeriesTolerance{});
    const double via_row = std::exp(-0.5 * 0.25 / t) / t * row.sum(1.8);
    CHECK(rel_diff(via_row, heat_kernel_wedge(Wedge(beta), t, x, y)) < 1e-12);
    CHECK(row.terms() > 1);
    CHECK(WedgeSeriesRow(beta, 0.7, 0.0, SeriesTolerance{}).sum(1.0) == 0.0);
}

TEST_CASE("fixed truncation is a cap") {
    const Wedge w(2.0);
    const Vec2 x = polar(3.0, 1.0);
    KernelSpec one;
    one.truncation = 1;
    CHECK_THROWS_AS(heat_kernel_wedge(w, 0.1, x, x, one), SeriesNotConverged);
    KernelSpec plenty;
    plenty.truncation = 4000;
    CHECK(rel_diff(heat_kernel_wedge(w, 0.1, x, x, plenty), heat_kernel_wedge(w, 0.1, x, x)) < 1e-14);
    KernelSpec bad;
    bad.truncation = 0;
    CHECK_THROWS_AS(heat_kernel_wedge(w, 1.0, x, x, bad), DomainError);
}

TEST_CASE("small-time kernel stays finite and accurate") {
    // Large z exercises the escalation path; compare against the quarter product.
    const Wedge q(kPi / 2);
    const Vec2 x{6.0, 5.0}, y{6.05, 4.98};
    const double t = 0.01;
    CHECK(rel_diff(heat_kernel_wedge(q, t, x, y), quarter_oracle(t, x, y)) < 1e-9);
}

TEST_CASE("weyl kernel examples") {
    const std::array<double, 2> x{0, 1};
    CHECK(heat_kernel_weyl(1.0, x, x) == doctest::Approx((1 - std::exp(-1.0)) / (2 * kPi)).epsilon(1e-14));
    const std::array<double, 1> u{0.3}, v{-0.4};
    CHECK(heat_kernel_weyl(2.0, u, v) == doctest::Approx(phi(2.0, 0.7)).epsilon(1e-15));
    const std::array<double, 2> y{0.2, 1.5}, y_swapped{1.5, 0.2};
    CHECK(karlin_mcgregor_determinant(1.0, x, y_swapped) ==
          doctest::Approx(-karlin_mcgregor_determinant(1.0, x, y)).epsilon(1e-14));
    CHECK_THROWS_AS(heat_kernel_weyl(1.0, x, y_swapped), DomainError);

    // Explicit 3x3 cofactor expansion.
    const std::array<double, 3> a{-0.5, 0.1, 1.2}, b{-0.2, 0.4, 0.9};
    auto m = [&](int i, int j) { return phi(0.6, a[i] - b[j]); };
    const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    CHECK(rel_diff(heat_kernel_weyl(0.6, a, b), det) < 1e-12);
}

TEST_CASE("weyl d=2 kernel equals the rotated half-plane kernel") {
    const Wedge w(kPi, kPi / 4);
    const std::array<double, 2> x{-0.3, 0.8}, y{0.1, 1.7};
    CHECK(rel_diff(heat_kernel_weyl(1.3, x, y), heat_kernel_wedge(w, 1.3, Vec2{x[0], x[1]}, Vec2{y[0], y[1]})) <
          1e-12);
}

TEST_CASE("normal derivative example and finite-difference agreement") {
    const Wedge w(2 * kPi / 3);
    const Vec2 x = polar(1.0, w.beta() / 3);
    const Vec2 a = polar(2.0, 0.0);
    const double nd = normal_derivative_wedge(w, x, a);
    CHECK(nd > 0.0);
    CHECK(rel_diff(nd, normal_derivative_fd(w, x, a)) < 1e-6);

    test_support::Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        const Wedge v(rng.uniform(0.5, 6.0), rng.uniform(-kPi, kPi));
        const Vec2 xi = v.from_canonical(polar(rng.uniform(0.3, 2.5), rng.uniform(0.1, 0.9) * v.beta()));
        const Vec2 ai = v.from_canonical(polar(rng.uniform(0.3, 2.5), i % 2 ? v.beta() : 0.0));
        const double d = normal_derivative_wedge(v, xi, ai);
        CHECK(d > 0.0);
        CHECK(rel_diff(d, normal_derivative_fd(v, xi, ai)) < 1e-6);
    }
}

TEST_CASE("normal derivative is mirror symmetric across the bisector") {
    const Wedge w(2.5);
    for (double th : {0.3, 1.0, 1.6}) {
        const double lower = normal_derivative_wedge(w, polar(1.2, th), polar(1.7, 0.0));
        const double upper = normal_derivative_wedge(w, polar(1.2, w.beta() - th), polar(1.7, w.beta()));
        CHECK(rel_diff(lower, upper) < 1e-12);
    }
    CHECK_THROWS_AS(normal_derivative_wedge(w, polar(1, 1), polar(1, 1)), DomainError);
    CHECK_THROWS_AS(normal_derivative_wedge(w, polar(1, 1), Vec2{0, 0}), DomainError);
}

TEST_CASE("sub-Markov mass") {
    for (double beta : {0.7, kPi / 2, 2 * kPi / 3, 4.5}) {
        const Wedge w(beta);
        const SurvivalValue m = wedge_mass(w, polar(1.0, beta / 2), 1.5);
        CHECK(m.p <= 1.0 + 1e-6);
        CHECK(m.p > 0.0);
    }
    const Vec2 x{0.7, 1.1};
    const double t = 1.3;
    const double exact = (2 * test_support::big_phi(0.7 / std::sqrt(t)) - 1) * (2 * test_support::big_phi(1.1 / std::sqrt(t)) - 1);
    CHECK(rel_diff(wedge_mass(Wedge(kPi / 2), x, t).p, exact) < 1e-8);
}

TEST_CASE("Chapman-Kolmogorov") {
    test_support::Rng rng(37);
    for (int i = 0; i < 10; ++i) {
        const Wedge w(rng.uniform(0.8, 5.0));
        const double s = rng.uniform(0.3, 1.5), t = rng.uniform(0.3, 1.5);
        const Vec2 x = polar(rng.uniform(0.5, 2.0), rng.uniform(0.2, 0.8) * w.beta());
        const Vec2 y = polar(rng.uniform(0.5, 2.0), rng.uniform(0.2, 0.8) * w.beta());
        const double lhs = wedge_kernel_convolution(w, s, t, x, y);
        const double rhs = heat_kernel_wedge(w, s + t, x, y);
        CHECK(rel_diff(lhs, rhs) < 1e-4);
    }
}
