#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cone_exit/geometry.hpp"
#include "cone_exit/kernel.hpp"
#include "cone_exit/survival.hpp"

namespace cone_exit {

/// Polynomial exponent as an exact rational expression c0 + c1·α₁.
struct AlphaForm {
    int c0_num = 0;
    int c0_den = 1;
    int c1_num = 0;
    int c1_den = 1;

    double value(double alpha1) const;
    /// Canonical text such as "alpha1/2+1", "3/2" or "0".
    std::string expr() const;

    friend bool operator==(const AlphaForm&, const AlphaForm&) = default;
};

/// Exponent of the law for each drift regime of a planar wedge.
AlphaForm alpha_form(Regime r);

/// P_x[τ > t] ~ prefactor · t^{-alpha} · e^{-gamma t}.
struct AsymptoticLaw {
    Regime regime = Regime::Zero;
    double gamma = 0.0;
    double alpha = 0.0;
    AlphaForm form;
    double prefactor = 0.0;  // κ·h(x); for regime C the limiting probability
    std::string provenance;

    double evaluate(double t) const;
};

AsymptoticLaw asymptotic_law(const Wedge& wedge, Vec2 a, Vec2 x, const KernelSpec& spec = {});

/// One-dimensional law on (0, ∞): regimes A (a < 0), B (a = 0), C (a > 0).
AsymptoticLaw asymptotic_law_halfline(double a, double x);

/// Regime-C limit in a Weyl chamber, (2π)^{d/2} e^{|x-a|²/2} p(1, x, a) with the
/// Karlin–McGregor kernel. Requires a and x strictly increasing.
AsymptoticLaw asymptotic_law_weyl_interior(std::span<const double> a, std::span<const double> x);

/// e^{-<a,x>} det(e^{x_i a_j}), the same limit written without the kernel.
double weyl_interior_limit_closed_form(std::span<const double> a, std::span<const double> x);

/// Constant of the polar-interior law, (2^{α₁}Γ(α₁+1))^{-1} ∫_C e^{<a,y>} u(y) dy.
double kappa_a(const Wedge& wedge, Vec2 a);
/// Constant of the zero-drift law, (2^{α₁}Γ(α₁+1))^{-1} ∫_C u(y) e^{-|y|²/2} dy.
double kappa_b(const Wedge& wedge);
/// Constant of the polar-boundary law (already doubled for a half-plane).
double kappa_f(const Wedge& wedge, Vec2 a);
/// Weight of one contact point p in the non-polar exterior law.
double kappa_e(Vec2 p, Vec2 a);

/// Positive harmonic function |x|^{p₁} m₁(θ_x) of the wedge.
double harmonic_u(const Wedge& wedge, Vec2 x);

enum class Trend { Converging, Inconclusive, Diverging };
std::string_view trend_name(Trend t);

struct RatioDiagnostic {
    std::vector<double> t_grid;
    std::vector<double> exact;
    std::vector<double> asymptotic;
    std::vector<double> ratios;
    Trend trend = Trend::Inconclusive;
};

/// Trend of |ratio - 1| along an increasing grid: converging needs a strict decrease at every
/// step and a final value below `band`; diverging means a strict increase ending above it.
Trend classify_trend(std::span<const double> ratios, double band = 0.1);

RatioDiagnostic ratio_diagnostic(const AsymptoticLaw& law, const std::function<SurvivalValue(double)>& exact,
                                 std::span<const double> t_grid);

}  // namespace cone_exit
