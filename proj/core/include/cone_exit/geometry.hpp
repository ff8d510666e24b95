#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace cone_exit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default absolute angular tolerance (radians) for edge and polar-boundary membership.
inline constexpr double kDefaultAngleTol = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
Vec2 rotate(Vec2 v, double angle);

/// Reduces an angle to [0, 2π).
double wrap_angle(double angle);

/// Distance between two angles on the circle, in [0, π].
double angular_distance(double a, double b);

/// Planar cone {ρ e^{iθ} : ρ > 0, rotation < θ < rotation + beta}.
class Wedge {
public:
    explicit Wedge(double beta, double rotation = 0.0);

    double beta() const noexcept { return beta_; }
    double rotation() const noexcept { return rotation_; }

    /// Maps a point of the plane into the canonical frame (lower edge on the positive x-axis).
    Vec2 to_canonical(Vec2 p) const { return rotate(p, -rotation_); }
    Vec2 from_canonical(Vec2 p) const { return rotate(p, rotation_); }

    /// Canonical polar angle of p in [0, 2π); 0 for the apex.
    double canonical_angle(Vec2 p) const;

    bool contains(Vec2 p) const;         // open wedge
    bool contains_closed(Vec2 p) const;  // closure
    bool on_boundary(Vec2 p, double angle_tol = kDefaultAngleTol) const;

    Wedge rotated(double phi) const { return Wedge(beta_, rotation_ + phi); }

private:
    double beta_;
    double rotation_;
};

enum class Regime { PolarInterior, Zero, Interior, Boundary, NonPolarExterior, PolarBoundary };

/// Single-letter tag A–F.
char regime_letter(Regime r);
std::string_view regime_name(Regime r);

enum class PolarMembership { Interior, Boundary, Exterior };
std::string_view polar_membership_name(PolarMembership m);

struct Projection {
    double distance = 0.0;
    double gamma = 0.0;  // distance² / 2
    std::vector<Vec2> minimizers;
};

Regime classify_regime(const Wedge& wedge, Vec2 a, double angle_tol = kDefaultAngleTol);
Regime classify_regime(const Wedge& wedge, std::span<const double> a,
                       double angle_tol = kDefaultAngleTol);

Projection project_onto_cone(const Wedge& wedge, Vec2 a, double angle_tol = kDefaultAngleTol);
Projection project_onto_cone(const Wedge& wedge, std::span<const double> a,
                             double angle_tol = kDefaultAngleTol);

PolarMembership polar_membership(const Wedge& wedge, Vec2 a, double angle_tol = kDefaultAngleTol);
PolarMembership polar_membership(const Wedge& wedge, std::span<const double> a,
                                 double angle_tol = kDefaultAngleTol);

/// Smallest angular distance (radians) from the direction of a to a regime boundary ray
/// (wedge edges and, for beta ≤ π, the polar-cone edges). Returns +inf for a = 0.
double regime_boundary_angle(const Wedge& wedge, Vec2 a);

/// Throws DomainError unless the drift/point has the expected dimension and finite entries.
Vec2 as_vec2(std::span<const double> v, std::string_view what);

/// Weyl chamber of type A: {x_1 < ... < x_d}.
bool in_weyl_chamber(std::span<const double> x);

}  // namespace cone_exit
