#include "cone_exit/survival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cone_exit/errors.hpp"
#include "cone_exit/quadrature.hpp"

namespace cone_exit {

namespace {

constexpr double kPeakSigmas = 8.0;

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("horizon t must be positive and finite");
}

double log_normal_cdf(double u) {
    if (u > -30.0) return std::log(normal_cdf(u));
    // Mills-ratio expansion in the far lower tail.
    const double u2 = u * u;
    const double series = 1.0 - 1.0 / u2 + 3.0 / (u2 * u2) - 15.0 / (u2 * u2 * u2);
    return -0.5 * u2 - std::log(-u) - 0.5 * std::log(kTwoPi) + std::log(series);
}

SurvivalValue finish(double raw, SurvivalMethod method, double err) {
    SurvivalValue v;
    v.method = method;
    v.est_quad_error = err;
    v.p = raw;
    if (raw > 1.0) {
        v.p = 1.0;
        v.clamped = true;
    }
    if (v.p < 0.0) v.p = 0.0;
    return v;
}

double relative_change(double coarse, double fine) {
    const double d = std::fabs(fine - coarse);
    if (d == 0.0) return 0.0;
    const double scale = std::max(std::fabs(fine), std::fabs(coarse));
    return d / scale;
}

std::vector<double> angular_breaks(double beta, double phi, double half_width) {
    std::vector<double> b;
    for (double shift : {0.0, -kTwoPi, kTwoPi}) {
        const double c = phi + shift;
        b.push_back(c);
        if (std::isfinite(half_width)) {
            b.push_back(c - half_width);
            b.push_back(c + half_width);
        }
    }
    std::erase_if(b, [beta](double v) { return !(v > 0.0 && v < beta); });
    return b;
}

// Integrand pieces of one quadrature pass; fn(ρ, angular rule) returns the angular integral.
template <class RadialFn>
double polar_pass(const QuadratureRule& radial, const QuadratureRule& angular, RadialFn&& fn) {
    double total = 0.0;
    for (std::size_t i = 0; i < radial.size(); ++i) total += radial.weights[i] * fn(radial.nodes[i], angular);
    return total;
}

struct Problem {
    double beta;
    Vec2 a;  // canonical frame
    Vec2 x;
    double rx;
    double tx;
    double t;
};

Problem make_problem(const Wedge& wedge, Vec2 a, Vec2 x, double t) {
    require_time(t);
    if (!std::isfinite(a.x) || !std::isfinite(a.y)) throw DomainError("drift must be finite");
    if (!std::isfinite(x.x) || !std::isfinite(x.y) || !wedge.contains(x)) {
        throw DomainError("start point must lie in the open wedge");
    }
    Problem p{wedge.beta(), wedge.to_canonical(a), wedge.to_canonical(x), 0.0, 0.0, t};
    p.rx = norm(p.x);
    p.tx = wedge.canonical_angle(x);
    return p;
}

// The integrand is dominated by a Gaussian centred at c. Inside the wedge it is at most
// e^{-dist(c,C)²/2σ²}, so dropping |y - c|² > dist² + (kσ)² loses a factor e^{-k²/2} relative.
double band_radius(const Problem& pr, Vec2 c, double k_sigma) {
    const double dist = project_onto_cone(Wedge(pr.beta), c).distance;
    return std::sqrt(dist * dist + k_sigma * k_sigma);
}

double girsanov_pass(const Problem& pr, int nr, int na, double k, const SeriesTolerance& tol,
                     std::optional<int> fixed_terms) {
    const double t = pr.t;
    const double st = std::sqrt(t);
    const double na_ = norm(pr.a);
    const Vec2 c = pr.x + t * pr.a;
    const double rc = norm(c);
    const double lo = std::max(0.0, rc - band_radius(pr, c, k * st));
    const double hi = na_ * t + k * st + pr.rx + 10.0;
    const double rb[] = {na_ * t, pr.rx, pr.rx - kPeakSigmas * st, pr.rx + kPeakSigmas * st,
                         rc - kPeakSigmas * st, rc, rc + kPeakSigmas * st};
    const QuadratureRule radial = composite_gauss_legendre(lo, hi, rb, nr);
    const double phi = rc > 0.0 ? wrap_angle(std::atan2(c.y, c.x)) : 0.0;
    const std::vector<double> ab =
        angular_breaks(pr.beta, phi, rc > 0.0 ? kPeakSigmas * st / rc : std::numeric_limits<double>::infinity());
    const QuadratureRule angular = composite_gauss_legendre(0.0, pr.beta, ab, na);

    std::vector<double> proj(angular.size());
    for (std::size_t j = 0; j < angular.size(); ++j) {
        proj[j] = pr.a.x * std::cos(angular.nodes[j]) + pr.a.y * std::sin(angular.nodes[j]);
    }
    const double shift = -dot(pr.a, pr.x) - 0.5 * t * dot(pr.a, pr.a);
    return polar_pass(radial, angular, [&](double rho, const QuadratureRule& ang) {
        const WedgeSeriesRow row(pr.beta, pr.tx, pr.rx * rho / t, tol, fixed_terms);
        const double dr = pr.rx - rho;
        const double base = shift - dr * dr / (2.0 * t);
        double acc = 0.0;
        for (std::size_t j = 0; j < ang.size(); ++j) {
            acc += ang.weights[j] * std::exp(base + rho * proj[j]) * row.sum(ang.nodes[j]);
        }
        return acc * rho / t;
    });
}

double scaled_pass(const Problem& pr, int nr, int na, double k, const SeriesTolerance& tol,
                   std::optional<int> fixed_terms) {
    const double t = pr.t;
    const double st = std::sqrt(t);
    const double na_ = norm(pr.a);
    const Vec2 c = (1.0 / t) * pr.x + pr.a;
    const double rc = norm(c);
    const double lo = std::max(0.0, rc - band_radius(pr, c, k / st));
    const double hi = na_ + k / st + (pr.rx + 10.0) / t;
    const double rb[] = {na_, pr.rx / t, rc - kPeakSigmas / st, rc, rc + kPeakSigmas / st};
    const QuadratureRule radial = composite_gauss_legendre(lo, hi, rb, nr);
    const double phi = rc > 0.0 ? wrap_angle(std::atan2(c.y, c.x)) : 0.0;
    const std::vector<double> ab = angular_breaks(
        pr.beta, phi, rc > 0.0 ? kPeakSigmas / (st * rc) : std::numeric_limits<double>::infinity());
    const QuadratureRule angular = composite_gauss_legendre(0.0, pr.beta, ab, na);

    std::vector<Vec2> dirs(angular.size());
    for (std::size_t j = 0; j < angular.size(); ++j) dirs[j] = unit(angular.nodes[j]);
    const double shift = -dot(pr.a, pr.x) - pr.rx * pr.rx / (2.0 * t);
    return t * polar_pass(radial, angular, [&](double rho, const QuadratureRule& ang) {
        const WedgeSeriesRow row(pr.beta, pr.tx, pr.rx * rho, tol, fixed_terms);
        const double base = shift + pr.rx * rho;
        double acc = 0.0;
        for (std::size_t j = 0; j < ang.size(); ++j) {
            const Vec2 d = pr.a - rho * dirs[j];
            acc += ang.weights[j] * std::exp(base - 0.5 * t * dot(d, d)) * row.sum(ang.nodes[j]);
        }
        return acc * rho;
    });
}

template <class Pass>
SurvivalValue self_checked(const QuadratureSpec& quad, const KernelSpec& spec, Pass&& pass, const char* what) {
    quad.validate();
    spec.validate();
    if (spec.backend != KernelBackend::WedgeSeries) {
        throw DomainError("wedge quadrature evaluates the wedge-series backend only");
    }
    const double coarse = pass(quad.radial_nodes, quad.angular_nodes);
    if (!quad.self_check) return finish(coarse, SurvivalMethod::Quadrature, 0.0);
    const double fine = pass(2 * quad.radial_nodes, 2 * quad.angular_nodes);
    const double err = relative_change(coarse, fine);
    if (err > quad.self_check_tol) {
        throw QuadratureNotConverged(std::string(what) + ": node doubling changed the result from " +
                                         std::to_string(coarse) + " to " + std::to_string(fine),
                                     coarse, fine);
    }
    return finish(fine, SurvivalMethod::Quadrature, err);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (radial_nodes < 8 || angular_nodes < 8) throw DomainError("quadrature node counts must be >= 8");
    if (!(radial_cutoff_sigmas > 0.0)) throw DomainError("radial cutoff must be positive");
    if (!(self_check_tol > 0.0)) throw DomainError("self-check tolerance must be positive");
}

std::string_view method_name(SurvivalMethod m) {
    switch (m) {
        case SurvivalMethod::ClosedForm: return "closed-form";
        case SurvivalMethod::Quadrature: return "quadrature";
        case SurvivalMethod::Product: return "product";
    }
    return "unknown";
}

double normal_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

SurvivalValue survival_halfline(double x, double a, double t) {
    require_time(t);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("half-line start point must be > 0");
    if (!std::isfinite(a)) throw DomainError("drift must be finite");
    const double st = std::sqrt(t);
    const double first = normal_cdf((x + a * t) / st);
    const double second = std::exp(-2.0 * a * x + log_normal_cdf((-x + a * t) / st));
    return finish(first - second, SurvivalMethod::ClosedForm, 0.0);
}

SurvivalValue survival_quarter(Vec2 x, Vec2 a, double t) {
    const SurvivalValue p1 = survival_halfline(x.x, a.x, t);
    const SurvivalValue p2 = survival_halfline(x.y, a.y, t);
    return finish(p1.p * p2.p, SurvivalMethod::Product, 0.0);
}

SurvivalValue survival_wedge_exact(const Wedge& wedge, Vec2 a, Vec2 x, double t, const QuadratureSpec& quad,
                                   const KernelSpec& spec) {
    const Problem pr = make_problem(wedge, a, x, t);
    return self_checked(
        quad, spec,
        [&](int nr, int na) { return girsanov_pass(pr, nr, na, quad.radial_cutoff_sigmas, spec.tol, spec.truncation); },
        "survival_wedge_exact");
}

SurvivalValue survival_wedge_scaled(const Wedge& wedge, Vec2 a, Vec2 x, double t, const QuadratureSpec& quad,
                                    const KernelSpec& spec) {
    const Problem pr = make_problem(wedge, a, x, t);
    return self_checked(
        quad, spec,
        [&](int nr, int na) { return scaled_pass(pr, nr, na, quad.radial_cutoff_sigmas, spec.tol, spec.truncation); },
        "survival_wedge_scaled");
}

SurvivalValue wedge_mass(const Wedge& wedge, Vec2 x, double t, const QuadratureSpec& quad, const KernelSpec& spec) {
    return survival_wedge_exact(wedge, Vec2{0.0, 0.0}, x, t, quad, spec);
}

double wedge_kernel_convolution(const Wedge& wedge, double s, double t, Vec2 x, Vec2 y, const QuadratureSpec& quad,
                                const KernelSpec& spec) {
    require_time(s);
    require_time(t);
    quad.validate();
    spec.validate();
    if (!wedge.contains(x) || !wedge.contains(y)) throw DomainError("convolution endpoints must be interior");
    const double beta = wedge.beta();
    const double rx = norm(x);
    const double ry = norm(y);
    const double tx = wedge.canonical_angle(x);
    const double ty = wedge.canonical_angle(y);
    const double k = quad.radial_cutoff_sigmas;
    const double ss = std::sqrt(s);
    const double st = std::sqrt(t);
    const double hi = std::max(rx, ry) + k * std::max(ss, st) + 10.0;
    const double rb[] = {rx, ry, rx - kPeakSigmas * ss, rx + kPeakSigmas * ss, ry - kPeakSigmas * st,
                         ry + kPeakSigmas * st};
    const QuadratureRule radial = composite_gauss_legendre(0.0, hi, rb, quad.radial_nodes);
    const double abk[] = {tx, ty};
    const QuadratureRule angular = composite_gauss_legendre(0.0, beta, abk, quad.angular_nodes);
    return polar_pass(radial, angular, [&](double rho, const QuadratureRule& ang) {
        const WedgeSeriesRow from_x(beta, tx, rx * rho / s, spec.tol, spec.truncation);
        const WedgeSeriesRow to_y(beta, ty, ry * rho / t, spec.tol, spec.truncation);
        const double dx = rx - rho;
        const double dy = ry - rho;
        const double radial_factor = std::exp(-dx * dx / (2.0 * s) - dy * dy / (2.0 * t)) / (s * t);
        double acc = 0.0;
        for (std::size_t j = 0; j < ang.size(); ++j) acc += ang.weights[j] * from_x.sum(ang.nodes[j]) * to_y.sum(ang.nodes[j]);
        return acc * radial_factor * rho;
    });
}

}  // namespace cone_exit
