#include "cone_exit/asymptotics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <vector>

#include "cone_exit/errors.hpp"
#include "cone_exit/quadrature.hpp"
#include "cone_exit/spectral.hpp"

namespace cone_exit {

namespace {

constexpr int kAngularPanels = 16;
constexpr int kAngularNodes = 48;

double angular_integral(double beta, const std::function<double(double)>& f) {
    std::vector<double> cuts;
    for (int i = 1; i < kAngularPanels; ++i) cuts.push_back(beta * i / kAngularPanels);
    const QuadratureRule rule = composite_gauss_legendre(0.0, beta, cuts, kAngularNodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

// (2^{α₁} Γ(α₁+1))^{-1}
double eigen_normaliser(double alpha1) {
    return std::exp(-alpha1 * std::log(2.0) - log_gamma(alpha1 + 1.0));
}

void require_interior(const Wedge& wedge, Vec2 x) {
    if (!std::isfinite(x.x) || !std::isfinite(x.y) || !wedge.contains(x)) {
        throw DomainError("start point must lie in the open wedge");
    }
}

std::string fraction(int num, int den) {
    const int g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace

double AlphaForm::value(double alpha1) const {
    return static_cast<double>(c0_num) / c0_den + static_cast<double>(c1_num) / c1_den * alpha1;
}

std::string AlphaForm::expr() const {
    std::string out;
    if (c1_num != 0) {
        const int g = std::gcd(c1_num, c1_den);
        const int n = c1_num / g;
        const int d = c1_den / g;
        if (n == -1) out = "-";
        else if (n != 1) out = std::to_string(n) + "*";
        out += "alpha1";
        if (d != 1) out += "/" + std::to_string(d);
    }
    if (c0_num != 0 || out.empty()) {
        const std::string c0 = fraction(c0_num, c0_den);
        if (!out.empty() && c0_num > 0) out += "+";
        out += c0;
    }
    return out;
}

AlphaForm alpha_form(Regime r) {
    switch (r) {
        case Regime::PolarInterior: return {1, 1, 1, 1};
        case Regime::Zero: return {0, 1, 1, 2};
        case Regime::Interior: return {0, 1, 0, 1};
        case Regime::Boundary: return {1, 2, 0, 1};
        case Regime::NonPolarExterior: return {3, 2, 0, 1};
        case Regime::PolarBoundary: return {1, 1, 1, 2};
    }
    return {};
}

double AsymptoticLaw::evaluate(double t) const {
    if (!(t > 0.0)) throw DomainError("horizon t must be positive");
    return prefactor * std::exp(-alpha * std::log(t) - gamma * t);
}

double harmonic_u(const Wedge& wedge, Vec2 x) {
    if (!wedge.contains_closed(x)) throw DomainError("point outside the wedge");
    const double p1 = kPi / wedge.beta();
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    return std::pow(r, p1) * eigenfunction_m(wedge.beta(), 1, std::min(wedge.canonical_angle(x), wedge.beta()));
}

double kappa_a(const Wedge& wedge, Vec2 a) {
    const double beta = wedge.beta();
    const double p1 = kPi / beta;
    const Vec2 ac = wedge.to_canonical(a);
    const double lg = log_gamma(p1 + 2.0);
    const double integral = angular_integral(beta, [&](double th) {
        const double c = -(ac.x * std::cos(th) + ac.y * std::sin(th));
        if (!(c > 0.0)) throw DomainError("drift is not in the interior of the polar cone");
        return eigenfunction_m(beta, 1, th) * std::exp(lg - (p1 + 2.0) * std::log(c));
    });
    return eigen_normaliser(p1) * integral;
}

double kappa_b(const Wedge& wedge) {
    const double beta = wedge.beta();
    const double p1 = kPi / beta;
    const double radial = std::exp(0.5 * p1 * std::log(2.0) + log_gamma(0.5 * p1 + 1.0));
    const double angular = angular_integral(beta, [&](double th) { return eigenfunction_m(beta, 1, th); });
    return eigen_normaliser(p1) * radial * angular;
}

double kappa_f(const Wedge& wedge, Vec2 a) {
    const double beta = wedge.beta();
    if (beta > kPi + kDefaultAngleTol) throw DomainError("polar-boundary law needs beta <= pi");
    const double p1 = kPi / beta;
    const double na = norm(a);
    if (!(na > 0.0)) throw DomainError("polar-boundary law needs a nonzero drift");
    const double dn_u = std::sqrt(2.0 / beta) * p1;
    const double k = eigen_normaliser(p1) * dn_u * std::exp((0.5 * p1 - 1.0) * std::log(2.0) + log_gamma(0.5 * p1)) /
                     (na * na);
    return std::fabs(beta - kPi) <= kDefaultAngleTol ? 2.0 * k : k;
}

double kappa_e(Vec2 p, Vec2 a) {
    const Vec2 d = p - a;
    const double d2 = dot(d, d);
    if (!(d2 > 0.0)) throw DomainError("contact point must differ from the drift");
    return std::sqrt(kTwoPi) * std::exp(0.5 * (dot(p, p) - dot(a, a))) / d2;
}

AsymptoticLaw asymptotic_law(const Wedge& wedge, Vec2 a, Vec2 x, const KernelSpec& spec) {
    require_interior(wedge, x);
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw DomainError("drift must be finite");
    const double beta = wedge.beta();
    const double p1 = kPi / beta;

    AsymptoticLaw law;
    law.regime = classify_regime(wedge, a);
    law.form = alpha_form(law.regime);
    law.alpha = law.form.value(p1);
    law.gamma = project_onto_cone(wedge, a).gamma;

    const Vec2 dx = x - a;
    const double gauss = 0.5 * dot(dx, dx);
    switch (law.regime) {
        case Regime::PolarInterior:
            law.prefactor = kappa_a(wedge, a) * std::exp(-dot(a, x)) * harmonic_u(wedge, x);
            law.provenance = "case A: radial integral in closed form, angular integral by Gauss-Legendre";
            break;
        case Regime::Zero:
            law.prefactor = kappa_b(wedge) * harmonic_u(wedge, x);
            law.provenance = "case B: radial moment in closed form, angular integral by Gauss-Legendre";
            break;
        case Regime::Interior:
            law.prefactor = kTwoPi * std::exp(gauss) * heat_kernel_wedge(wedge, 1.0, x, a, spec);
            law.provenance = "case C: limiting probability from the kernel series at time 1";
            break;
        case Regime::Boundary:
            law.prefactor = std::sqrt(kTwoPi) * std::exp(gauss) * normal_derivative_wedge(wedge, x, a, spec);
            law.provenance = "case D: normal derivative of the kernel series at the drift";
            break;
        case Regime::NonPolarExterior: {
            const Projection proj = project_onto_cone(wedge, a);
            double sum = 0.0;
            for (Vec2 p : proj.minimizers) sum += kappa_e(p, a) * normal_derivative_wedge(wedge, x, p, spec);
            law.prefactor = std::exp(gauss) * sum;
            law.provenance = "case E: " + std::to_string(proj.minimizers.size()) +
                             " contact point(s), closed-form weights, normal derivative of the kernel series";
            break;
        }
        case Regime::PolarBoundary:
            law.prefactor = kappa_f(wedge, a) * std::exp(-dot(a, x)) * harmonic_u(wedge, x);
            law.provenance = std::fabs(beta - kPi) <= kDefaultAngleTol
                                 ? "case F: closed-form constant, doubled for the half-plane"
                                 : "case F: closed-form constant";
            break;
    }
    return law;
}

AsymptoticLaw asymptotic_law_halfline(double a, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("half-line start point must be > 0");
    if (!std::isfinite(a)) throw DomainError("drift must be finite");
    AsymptoticLaw law;
    // d = 1: α₁ = 1/2, p₁ = 1.
    if (a < 0.0) {
        law.regime = Regime::PolarInterior;
        law.form = alpha_form(law.regime);
        law.alpha = 1.5;
        law.gamma = 0.5 * a * a;
        law.prefactor = 2.0 * x * std::exp(-a * x) / (std::sqrt(kTwoPi) * a * a);
        law.provenance = "half-line, negative drift";
    } else if (a == 0.0) {
        law.regime = Regime::Zero;
        law.form = {1, 2, 0, 1};
        law.alpha = 0.5;
        law.prefactor = std::sqrt(2.0 / kPi) * x;
        law.provenance = "half-line, zero drift";
    } else {
        law.regime = Regime::Interior;
        law.form = alpha_form(law.regime);
        const double d = x - a;
        law.prefactor = std::sqrt(kTwoPi) * std::exp(0.5 * d * d) * heat_kernel_halfline(1.0, x, a);
        law.provenance = "half-line, positive drift: image kernel at time 1";
    }
    return law;
}

AsymptoticLaw asymptotic_law_weyl_interior(std::span<const double> a, std::span<const double> x) {
    if (a.size() != x.size() || a.empty()) throw DomainError("drift and start point must have equal dimension");
    if (!in_weyl_chamber(a)) throw DomainError("drift must lie in the open Weyl chamber");
    if (!in_weyl_chamber(x)) throw DomainError("start point must lie in the open Weyl chamber");
    double gauss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) gauss += 0.5 * (x[i] - a[i]) * (x[i] - a[i]);
    AsymptoticLaw law;
    law.regime = Regime::Interior;
    law.form = alpha_form(law.regime);
    const double d = static_cast<double>(a.size());
    law.prefactor = std::pow(kTwoPi, 0.5 * d) * std::exp(gauss) * heat_kernel_weyl(1.0, x, a);
    law.provenance = "case C in a Weyl chamber: Karlin-McGregor kernel at time 1";
    return law;
}

double weyl_interior_limit_closed_form(std::span<const double> a, std::span<const double> x) {
    if (a.size() != x.size() || a.empty()) throw DomainError("drift and start point must have equal dimension");
    const auto d = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd m(d, d);
    double ax = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        ax += a[i] * x[i];
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = std::exp(x[i] * a[j]);
    }
    const double det = d == 1 ? m(0, 0) : Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
    return std::exp(-ax) * det;
}

std::string_view trend_name(Trend t) {
    switch (t) {
        case Trend::Converging: return "converging";
        case Trend::Inconclusive: return "inconclusive";
        case Trend::Diverging: return "diverging";
    }
    return "unknown";
}

Trend classify_trend(std::span<const double> ratios, double band) {
    if (ratios.size() < 2) return Trend::Inconclusive;
    bool decreasing = true;
    bool increasing = true;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        const double prev = std::fabs(ratios[i - 1] - 1.0);
        const double cur = std::fabs(ratios[i] - 1.0);
        if (!(cur < prev)) decreasing = false;
        if (!(cur > prev)) increasing = false;
    }
    const double last = std::fabs(ratios.back() - 1.0);
    if (decreasing && last < band) return Trend::Converging;
    if (increasing && last >= band) return Trend::Diverging;
    return Trend::Inconclusive;
}

RatioDiagnostic ratio_diagnostic(const AsymptoticLaw& law, const std::function<SurvivalValue(double)>& exact,
                                 std::span<const double> t_grid) {
    if (t_grid.size() < 3) throw DomainError("ratio diagnostic needs at least three horizons");
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("horizons must be strictly increasing");
    }
    RatioDiagnostic diag;
    for (double t : t_grid) {
        const double e = exact(t).p;
        const double s = law.evaluate(t);
        diag.t_grid.push_back(t);
        diag.exact.push_back(e);
        diag.asymptotic.push_back(s);
        diag.ratios.push_back(e / s);
    }
    diag.trend = classify_trend(diag.ratios);
    return diag;
}

}  // namespace cone_exit
