#include "cone_exit/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cone_exit/errors.hpp"

namespace cone_exit {

Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

double wrap_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

double angular_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

Wedge::Wedge(double beta, double rotation) : beta_(beta), rotation_(rotation) {
    if (!std::isfinite(beta) || !(beta > 0.0) || !(beta < kTwoPi)) {
        throw DomainError("wedge opening angle must lie in (0, 2*pi), got " + std::to_string(beta));
    }
    if (!std::isfinite(rotation)) throw DomainError("wedge rotation must be finite");
}

double Wedge::canonical_angle(Vec2 p) const {
    const Vec2 q = to_canonical(p);
    if (q.x == 0.0 && q.y == 0.0) return 0.0;
    return wrap_angle(std::atan2(q.y, q.x));
}

bool Wedge::contains(Vec2 p) const {
    if (p.x == 0.0 && p.y == 0.0) return false;
    const double th = canonical_angle(p);
    return th > 0.0 && th < beta_;
}

bool Wedge::contains_closed(Vec2 p) const {
    if (p.x == 0.0 && p.y == 0.0) return true;
    const double th = canonical_angle(p);
    return th <= beta_ + kDefaultAngleTol || th >= kTwoPi - kDefaultAngleTol;
}

bool Wedge::on_boundary(Vec2 p, double angle_tol) const {
    if (p.x == 0.0 && p.y == 0.0) return true;
    const double th = canonical_angle(p);
    return angular_distance(th, 0.0) <= angle_tol || angular_distance(th, beta_) <= angle_tol;
}

char regime_letter(Regime r) {
    switch (r) {
        case Regime::PolarInterior: return 'A';
        case Regime::Zero: return 'B';
        case Regime::Interior: return 'C';
        case Regime::Boundary: return 'D';
        case Regime::NonPolarExterior: return 'E';
        case Regime::PolarBoundary: return 'F';
    }
    return '?';
}

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::PolarInterior: return "polar-interior";
        case Regime::Zero: return "zero";
        case Regime::Interior: return "interior";
        case Regime::Boundary: return "boundary";
        case Regime::NonPolarExterior: return "non-polar-exterior";
        case Regime::PolarBoundary: return "polar-boundary";
    }
    return "unknown";
}

std::string_view polar_membership_name(PolarMembership m) {
    switch (m) {
        case PolarMembership::Interior: return "interior";
        case PolarMembership::Boundary: return "boundary";
        case PolarMembership::Exterior: return "exterior";
    }
    return "unknown";
}

Vec2 as_vec2(std::span<const double> v, std::string_view what) {
    if (v.size() != 2) {
        throw DomainError(std::string(what) + " must be 2-dimensional, got dimension " +
                          std::to_string(v.size()));
    }
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
        throw DomainError(std::string(what) + " has non-finite entries");
    }
    return {v[0], v[1]};
}

namespace {

Vec2 checked(Vec2 a) {
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw DomainError("drift has non-finite entries");
    return a;
}

// Directions of the polar cone edges in the canonical frame (meaningful for beta <= pi).
double polar_lower(const Wedge& w) { return w.beta() + kPi / 2.0; }
constexpr double kPolarUpper = 1.5 * kPi;

}  // namespace

PolarMembership polar_membership(const Wedge& wedge, Vec2 a, double angle_tol) {
    checked(a);
    if (a.x == 0.0 && a.y == 0.0) return PolarMembership::Boundary;
    if (wedge.beta() > kPi) return PolarMembership::Exterior;
    const double phi = wedge.canonical_angle(a);
    const double lo = polar_lower(wedge);
    if (angular_distance(phi, lo) <= angle_tol || angular_distance(phi, kPolarUpper) <= angle_tol) {
        return PolarMembership::Boundary;
    }
    if (phi > lo && phi < kPolarUpper) return PolarMembership::Interior;
    return PolarMembership::Exterior;
}

PolarMembership polar_membership(const Wedge& wedge, std::span<const double> a, double angle_tol) {
    return polar_membership(wedge, as_vec2(a, "drift"), angle_tol);
}

Regime classify_regime(const Wedge& wedge, Vec2 a, double angle_tol) {
    checked(a);
    if (a.x == 0.0 && a.y == 0.0) return Regime::Zero;
    const double phi = wedge.canonical_angle(a);
    if (angular_distance(phi, 0.0) <= angle_tol || angular_distance(phi, wedge.beta()) <= angle_tol) {
        return Regime::Boundary;
    }
    if (phi > 0.0 && phi < wedge.beta()) return Regime::Interior;
    switch (polar_membership(wedge, a, angle_tol)) {
        case PolarMembership::Interior: return Regime::PolarInterior;
        case PolarMembership::Boundary: return Regime::PolarBoundary;
        case PolarMembership::Exterior: break;
    }
    return Regime::NonPolarExterior;
}

Regime classify_regime(const Wedge& wedge, std::span<const double> a, double angle_tol) {
    return classify_regime(wedge, as_vec2(a, "drift"), angle_tol);
}

Projection project_onto_cone(const Wedge& wedge, Vec2 a, double angle_tol) {
    Projection out;
    const double len = norm(a);
    switch (classify_regime(wedge, a, angle_tol)) {
        case Regime::Zero:
        case Regime::Interior:
        case Regime::Boundary:
            out.minimizers = {a};
            return out;
        case Regime::PolarInterior:
        case Regime::PolarBoundary:
            out.distance = len;
            out.gamma = 0.5 * len * len;
            out.minimizers = {Vec2{0.0, 0.0}};
            return out;
        case Regime::NonPolarExterior:
            break;
    }

    const Vec2 ac = wedge.to_canonical(a);
    struct Candidate {
        Vec2 point;
        double dist;
    };
    Candidate cand[2];
    const double edge_angles[2] = {0.0, wedge.beta()};
    for (int k = 0; k < 2; ++k) {
        const Vec2 e = unit(edge_angles[k]);
        const double s = std::max(0.0, dot(ac, e));
        const Vec2 p = s * e;
        cand[k] = {p, norm(ac - p)};
    }
    const double best = std::min(cand[0].dist, cand[1].dist);
    const double tie_tol = angle_tol * std::max(1.0, best);
    for (const auto& c : cand) {
        if (c.dist - best > tie_tol) continue;
        const Vec2 p = wedge.from_canonical(c.point);
        const bool duplicate = std::any_of(out.minimizers.begin(), out.minimizers.end(),
                                           [&](Vec2 q) { return norm(q - p) <= tie_tol; });
        if (!duplicate) out.minimizers.push_back(p);
    }
    out.distance = best;
    out.gamma = 0.5 * best * best;
    return out;
}

Projection project_onto_cone(const Wedge& wedge, std::span<const double> a, double angle_tol) {
    return project_onto_cone(wedge, as_vec2(a, "drift"), angle_tol);
}

double regime_boundary_angle(const Wedge& wedge, Vec2 a) {
    if (a.x == 0.0 && a.y == 0.0) return std::numeric_limits<double>::infinity();
    const double phi = wedge.canonical_angle(a);
    double d = std::min(angular_distance(phi, 0.0), angular_distance(phi, wedge.beta()));
    if (wedge.beta() <= kPi) {
        d = std::min({d, angular_distance(phi, polar_lower(wedge)), angular_distance(phi, kPolarUpper)});
    }
    return d;
}

bool in_weyl_chamber(std::span<const double> x) {
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i - 1] < x[i])) return false;
    }
    return true;
}

}  // namespace cone_exit
