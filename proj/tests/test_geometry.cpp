#include <doctest.h>

#include <array>
#include <set>

#include "cone_exit/errors.hpp"
#include "cone_exit/geometry.hpp"
#include "test_support.hpp"

using namespace cone_exit;
using test_support::polar;

namespace {

// Brute-force nearest point of the closed wedge on a polar grid.
double grid_distance(const Wedge& w, Vec2 a, int n_r, int n_th, double r_max) {
    double best = norm(a);
    for (int i = 0; i <= n_r; ++i) {
        const double r = r_max * i / n_r;
        for (int k = 0; k <= n_th; ++k) {
            const Vec2 y = w.from_canonical(polar(r, w.beta() * k / n_th));
            best = std::min(best, norm(a - y));
        }
    }
    return best;
}

// Polar cone membership by sampling inner products over the closed wedge directions.
PolarMembership sampled_membership(const Wedge& w, Vec2 a) {
    double worst = -1e300;
    for (int k = 0; k <= 4000; ++k) {
        worst = std::max(worst, dot(a, w.from_canonical(unit(w.beta() * k / 4000.0))));
    }
    const double scale = norm(a);
    if (worst > 1e-12 * scale) return PolarMembership::Exterior;
    if (worst < -1e-12 * scale) return PolarMembership::Interior;
    return PolarMembership::Boundary;
}

}  // namespace

TEST_CASE("quarter plane regime examples") {
    const Wedge q(kPi / 2);
    CHECK(regime_letter(classify_regime(q, Vec2{1, 1})) == 'C');
    CHECK(regime_letter(classify_regime(q, Vec2{0, 0})) == 'B');
    CHECK(regime_letter(classify_regime(q, Vec2{0, -1})) == 'F');
    CHECK(regime_letter(classify_regime(q, Vec2{1, -1})) == 'E');
    CHECK(regime_letter(classify_regime(q, Vec2{-1, -1})) == 'A');
    CHECK(regime_letter(classify_regime(q, Vec2{2, 0})) == 'D');
}

TEST_CASE("projection examples") {
    const Wedge q(kPi / 2);
    const Projection p1 = project_onto_cone(q, Vec2{-1, -1});
    CHECK(p1.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p1.gamma == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(p1.minimizers.size() == 1);
    CHECK(norm(p1.minimizers[0]) == 0.0);

    const Projection p2 = project_onto_cone(q, Vec2{2, -3});
    CHECK(p2.distance == doctest::Approx(3.0).epsilon(1e-15));
    REQUIRE(p2.minimizers.size() == 1);
    CHECK(p2.minimizers[0].x == doctest::Approx(2.0));
    CHECK(std::abs(p2.minimizers[0].y) < 1e-15);

    const Wedge w(1.5 * kPi);
    const Projection p3 = project_onto_cone(w, 2.0 * unit(-kPi / 4));
    REQUIRE(p3.minimizers.size() == 2);
    const double d_grid = grid_distance(w, 2.0 * unit(-kPi / 4), 400, 2000, 4.0);
    CHECK(p3.distance <= d_grid + 1e-12);
    for (Vec2 m : p3.minimizers) {
        CHECK(w.on_boundary(m, 1e-9));
        CHECK(norm(2.0 * unit(-kPi / 4) - m) == doctest::Approx(p3.distance).epsilon(1e-12));
    }
}

TEST_CASE("polar membership examples") {
    CHECK(polar_membership(Wedge(kPi / 2), Vec2{-1, -1}) == PolarMembership::Interior);
    CHECK(polar_membership(Wedge(kPi / 2), Vec2{0, -1}) == PolarMembership::Boundary);
    CHECK(polar_membership(Wedge(1.5 * kPi), Vec2{-1, -1}) == PolarMembership::Exterior);
}

TEST_CASE("polar membership agrees with sampled inner products") {
    test_support::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const Wedge w(rng.uniform(0.05, 2 * kPi - 0.05), rng.uniform(-kPi, kPi));
        const Vec2 a = polar(rng.uniform(0.1, 3.0), rng.uniform(-kPi, kPi));
        const PolarMembership s = sampled_membership(w, a);
        if (s == PolarMembership::Boundary) continue;  // measure zero under random sampling
        CHECK(polar_membership(w, a) == s);
    }
}

TEST_CASE("regime partition is total and deterministic") {
    test_support::Rng rng(5);
    std::array<int, 6> count{};
    for (int i = 0; i < 100000; ++i) {
        const Wedge w(rng.uniform(0.05, 2 * kPi - 0.05), rng.uniform(-kPi, kPi));
        Vec2 a = polar(rng.uniform(0.0, 3.0), rng.uniform(-kPi, kPi));
        if (i % 97 == 0) a = {0, 0};
        if (i % 89 == 0) a = w.from_canonical(polar(1.5, (i % 2) * w.beta()));
        if (i % 83 == 0) a = w.from_canonical(polar(0.8, -kPi / 2));  // orthogonal to the lower edge
        const Regime r = classify_regime(w, a);
        CHECK(r == classify_regime(w, a));
        ++count[static_cast<int>(r)];
        if (w.beta() > kPi) CHECK((r != Regime::PolarInterior && r != Regime::PolarBoundary));
    }
    for (int c : count) CHECK(c > 0);
}

TEST_CASE("projection optimality against a grid search") {
    test_support::Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        const Wedge w(rng.uniform(0.1, 2 * kPi - 0.1), rng.uniform(-kPi, kPi));
        const Vec2 a = polar(rng.uniform(0.1, 2.0), rng.uniform(-kPi, kPi));
        const int n_r = 100, n_th = 100;
        const double r_max = 4.0;
        const double resolution = std::hypot(r_max / n_r, r_max * w.beta() / n_th);
        const double d = project_onto_cone(w, a).distance;
        const double g = grid_distance(w, a, n_r, n_th, r_max);
        CHECK(d <= g + 1e-12);
        CHECK(d >= g - resolution);
    }
}

TEST_CASE("regime and projection are consistent") {
    test_support::Rng rng(9);
    for (int i = 0; i < 5000; ++i) {
        const Wedge w(rng.uniform(0.1, 2 * kPi - 0.1), rng.uniform(-kPi, kPi));
        const Vec2 a = polar(rng.uniform(0.1, 3.0), rng.uniform(-kPi, kPi));
        const Regime r = classify_regime(w, a);
        const Projection p = project_onto_cone(w, a);
        if (r == Regime::PolarInterior || r == Regime::PolarBoundary) {
            REQUIRE(p.minimizers.size() == 1);
            CHECK(norm(p.minimizers[0]) == 0.0);
        }
        if (r == Regime::Interior || r == Regime::Boundary) {
            REQUIRE(p.minimizers.size() == 1);
            CHECK(norm(p.minimizers[0] - a) < 1e-12);
            CHECK(p.distance < 1e-12);
        }
        if (r == Regime::NonPolarExterior) CHECK(p.distance > 0.0);
        CHECK(p.gamma == doctest::Approx(0.5 * p.distance * p.distance).epsilon(1e-15));
    }
    const Projection z = project_onto_cone(Wedge(1.0), Vec2{0, 0});
    CHECK(z.distance == 0.0);
}

TEST_CASE("wedge containment and rotation") {
    const Wedge w(2.0, 0.7);
    const Vec2 inside = w.from_canonical(polar(1.0, 1.0));
    CHECK(w.contains(inside));
    CHECK(w.canonical_angle(inside) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(w.contains(w.from_canonical(polar(1.0, 2.5))));
    CHECK(w.on_boundary(w.from_canonical(polar(3.0, 2.0))));
    CHECK(w.contains_closed(Vec2{0, 0}));
    CHECK_FALSE(w.contains(Vec2{0, 0}));
}

TEST_CASE("invalid geometry is rejected") {
    CHECK_THROWS_AS(Wedge(0.0), DomainError);
    CHECK_THROWS_AS(Wedge(-1.0), DomainError);
    CHECK_THROWS_AS(Wedge(2 * kPi + 0.1), DomainError);
    const std::array<double, 3> three{1, 2, 3};
    CHECK_THROWS_AS(classify_regime(Wedge(1.0), std::span<const double>(three)), DomainError);
}

TEST_CASE("weyl chamber membership") {
    const std::array<double, 3> inc{-1, 0, 2};
    const std::array<double, 3> tie{0, 0, 1};
    CHECK(in_weyl_chamber(inc));
    CHECK_FALSE(in_weyl_chamber(tie));
}
