#include "cone_exit/kernel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cone_exit/errors.hpp"
#include "real_traits.hpp"

namespace cone_exit {

namespace {

using detail::quad;
using detail::RealOps;

constexpr double kFlushBelow = 1e-300;

double flush(double v) { return std::fabs(v) < kFlushBelow ? 0.0 : v; }

// log of (z/2)^ν / Γ(ν+1), the leading factor of the Bessel bound.
double log_lead(double nu, double z) { return nu * std::log(0.5 * z) - detail::lanczos_log_gamma(nu + 1.0); }

// log of the certified bound on e^{-z} I_ν(z).
double log_scaled_bessel_bound(double nu, double z) {
    return log_lead(nu, z) + std::min(0.0, z * z / (4.0 * (nu + 1.0)) - z);
}

struct SeriesResult {
    double value = 0.0;
    double abs_sum = 0.0;
    double rounding = 0.0;  // estimated absolute rounding error of value
    double tail = 0.0;
    int terms = 0;
    bool certified = false;
};

// Σ_j e^{-z} I_{ν_j}(z) w_j with ν_j = jπ/β, where |w_j| ≤ w_bound · j^growth.
// Stops once the certified tail is below rel_tol relative to the partial sum, or below
// what the working precision can resolve anyway.
template <class Real, class Weight>
SeriesResult sum_series(double beta, double z, Weight&& weight, double w_bound, int growth, double rel_tol,
                        int cap) {
    using Ops = RealOps<Real>;
    const double nu1 = kPi / beta;
    const double eps = static_cast<double>(Ops::epsilon());
    const double bessel_tol = 0.25 * eps;
    Real sum = 0;
    Real abs_sum = 0;
    double rounding = 0.0;
    SeriesResult res;
    for (int j = 1; j <= cap; ++j) {
        const double nu = j * nu1;
        Real log_i = 0;
        detail::log_bessel_i_series<Real>(Real(nu), Real(z), bessel_tol, 100000, log_i);
        const Real term = Ops::exp(log_i - Real(z)) * weight(j);
        sum += term;
        const Real mag = Ops::abs(term);
        abs_sum += mag;
        const double cond = std::fabs(log_lead(nu, z)) + z + 8.0;
        rounding += static_cast<double>(mag) * eps * cond;
        res.terms = j;

        // Tail Σ_{k>j} bound_k ≤ bound_{j+1} / (1 - ρ) with ρ the (decreasing) ratio of
        // consecutive leading factors.
        const double nu_next = (j + 1) * nu1;
        const double nu_next2 = (j + 2) * nu1;
        double ratio = std::exp(log_lead(nu_next2, z) - log_lead(nu_next, z));
        if (growth > 0) ratio *= std::pow((j + 2.0) / (j + 1.0), growth);
        if (ratio >= 1.0) continue;
        double tail = std::exp(log_scaled_bessel_bound(nu_next, z)) * w_bound / (1.0 - ratio);
        if (growth > 0) tail *= std::pow(j + 1.0, growth);
        res.tail = tail;
        const double s = std::fabs(static_cast<double>(sum));
        const double floor = eps * static_cast<double>(abs_sum);
        if (tail <= rel_tol * std::max(s, floor) || tail == 0.0) {
            res.certified = true;
            break;
        }
    }
    res.value = static_cast<double>(sum);
    res.abs_sum = static_cast<double>(abs_sum);
    res.rounding = rounding;
    return res;
}

// Runs the series in double, re-running in binary128 when cancellation eats the tolerance.
template <class WeightFactory>
double sum_series_escalating(double beta, double z, WeightFactory&& make_weight, double w_bound, int growth,
                             const KernelSpec& spec, const char* what) {
    const int cap = spec.truncation ? *spec.truncation
                                    : static_cast<int>(std::min<std::size_t>(spec.tol.max_terms, 1u << 30));
    const double rel_tol = spec.tol.rel_tol;
    SeriesResult r = sum_series<double>(beta, z, make_weight.template weights<double>(), w_bound, growth,
                                        rel_tol, cap);
    if (r.certified && r.rounding > rel_tol * std::fabs(r.value)) {
        r = sum_series<quad>(beta, z, make_weight.template weights<quad>(), w_bound, growth, rel_tol, cap);
    }
    if (!r.certified) {
        throw SeriesNotConverged(std::string(what) + ": truncation cap J=" + std::to_string(cap) +
                                     " reached before tolerance",
                                 r.tail);
    }
    return r.value;
}

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

void require_finite(Vec2 p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError(std::string(what) + " must be finite");
}

struct EdgePoint {
    double radius;
    bool upper;  // θ = β edge
};

EdgePoint locate_edge(const Wedge& wedge, Vec2 a, double angle_tol) {
    require_finite(a, "boundary point");
    const double r = norm(a);
    if (!(r > 0.0)) throw DomainError("boundary point must differ from the apex");
    const double th = wedge.canonical_angle(a);
    if (angular_distance(th, 0.0) <= angle_tol) return {r, false};
    if (angular_distance(th, wedge.beta()) <= angle_tol) return {r, true};
    throw DomainError("point is not on an edge of the wedge");
}

// w_j = m_j(θ_x) m_j(θ_y)
struct KernelWeights {
    double b, th_x, th_y;
    template <class Real>
    auto weights() const {
        using Ops = RealOps<Real>;
        const Real k = Ops::pi() / Real(b);
        const Real scale = Real(2) / Real(b);
        const Real ax = Real(th_x);
        const Real ay = Real(th_y);
        return [=](int j) { return scale * (Ops::sin(Real(j) * k * ax) * Ops::sin(Real(j) * k * ay)); };
    }
};

// w_j = m_j(θ_x) · inward normal derivative of m_j at the edge
struct DerivativeWeights {
    double b, th;
    bool upper;
    template <class Real>
    auto weights() const {
        using Ops = RealOps<Real>;
        const Real k = Ops::pi() / Real(b);
        const Real scale = Real(2) / Real(b);
        const Real ax = Real(th);
        const bool up = upper;
        return [=](int j) {
            const Real sign = (up && j % 2 == 0) ? Real(-1) : Real(1);
            return scale * Ops::sin(Real(j) * k * ax) * Real(j) * k * sign;
        };
    }
};

}  // namespace

std::string_view backend_name(KernelBackend b) {
    switch (b) {
        case KernelBackend::WedgeSeries: return "wedge-series";
        case KernelBackend::HalfLine: return "half-line";
        case KernelBackend::QuarterProduct: return "quarter-product";
        case KernelBackend::WeylKarlinMcGregor: return "weyl-km";
    }
    return "unknown";
}

void KernelSpec::validate() const {
    if (truncation && *truncation < 1) throw DomainError("fixed truncation J must be >= 1");
    tol.validate();
}

double gaussian_density(double t, double x) {
    require_positive_time(t);
    return std::exp(-x * x / (2.0 * t)) / std::sqrt(kTwoPi * t);
}

double heat_kernel_halfline(double t, double x, double y) {
    require_positive_time(t);
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("half-line kernel needs x > 0 and y > 0");
    }
    return flush(gaussian_density(t, x - y) * -std::expm1(-2.0 * x * y / t));
}

double heat_kernel_quarter(double t, Vec2 x, Vec2 y) {
    require_positive_time(t);
    if (!(x.x > 0.0 && x.y > 0.0 && y.x > 0.0 && y.y > 0.0)) {
        throw DomainError("quarter-plane kernel needs points with positive coordinates");
    }
    return flush(heat_kernel_halfline(t, x.x, y.x) * heat_kernel_halfline(t, x.y, y.y));
}

double karlin_mcgregor_determinant(double t, std::span<const double> x, std::span<const double> y) {
    require_positive_time(t);
    if (x.size() != y.size() || x.empty()) throw DomainError("Karlin-McGregor needs two vectors of equal dimension");
    const auto d = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = gaussian_density(t, x[i] - y[j]);
    }
    if (d == 1) return m(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

double heat_kernel_weyl(double t, std::span<const double> x, std::span<const double> y) {
    if (!in_weyl_chamber(x) || !in_weyl_chamber(y)) {
        throw DomainError("Weyl chamber kernel needs strictly increasing points");
    }
    return flush(std::max(0.0, karlin_mcgregor_determinant(t, x, y)));
}

double heat_kernel_wedge(const Wedge& wedge, double t, Vec2 x, Vec2 y, const KernelSpec& spec) {
    spec.validate();
    require_positive_time(t);
    require_finite(x, "x");
    require_finite(y, "y");
    if (!wedge.contains_closed(x) || !wedge.contains_closed(y)) throw DomainError("kernel point outside the wedge");
    if (wedge.on_boundary(x) || wedge.on_boundary(y)) return 0.0;

    const double beta = wedge.beta();
    switch (spec.backend) {
        case KernelBackend::WedgeSeries: break;
        case KernelBackend::QuarterProduct:
            if (std::fabs(beta - 0.5 * kPi) > 1e-15) throw DomainError("quarter-product backend needs beta = pi/2");
            return heat_kernel_quarter(t, wedge.to_canonical(x), wedge.to_canonical(y));
        case KernelBackend::HalfLine: {
            if (std::fabs(beta - kPi) > 1e-15) throw DomainError("half-line backend needs beta = pi");
            const Vec2 cx = wedge.to_canonical(x);
            const Vec2 cy = wedge.to_canonical(y);
            return flush(gaussian_density(t, cx.x - cy.x) * heat_kernel_halfline(t, cx.y, cy.y));
        }
        case KernelBackend::WeylKarlinMcGregor: throw DomainError("weyl-km backend does not apply to a wedge");
    }

    const double rx = norm(x);
    const double ry = norm(y);
    const double tx = wedge.canonical_angle(x);
    const double ty = wedge.canonical_angle(y);
    const double z = rx * ry / t;

    const KernelWeights factory{beta, tx, ty};

    const double s = sum_series_escalating(beta, z, factory, 2.0 / beta, 0, spec, "heat_kernel_wedge");
    const double dr = rx - ry;
    const double v = std::exp(-dr * dr / (2.0 * t)) / t * s;
    return flush(std::max(0.0, v));
}

Vec2 inward_normal(const Wedge& wedge, Vec2 a, double angle_tol) {
    const EdgePoint e = locate_edge(wedge, a, angle_tol);
    const double b = wedge.beta();
    const Vec2 n = e.upper ? Vec2{std::sin(b), -std::cos(b)} : Vec2{0.0, 1.0};
    return wedge.from_canonical(n);
}

double normal_derivative_wedge(const Wedge& wedge, Vec2 x, Vec2 a, const KernelSpec& spec) {
    spec.validate();
    require_finite(x, "x");
    const EdgePoint e = locate_edge(wedge, a, kDefaultAngleTol);
    if (!wedge.contains_closed(x)) throw DomainError("x outside the wedge");
    if (wedge.on_boundary(x)) return 0.0;

    const double beta = wedge.beta();
    const double rx = norm(x);
    const double tx = wedge.canonical_angle(x);
    const double z = rx * e.radius;

    const DerivativeWeights factory{beta, tx, e.upper};

    const double s = sum_series_escalating(beta, z, factory, 2.0 / beta * kPi / beta, 1, spec,
                                           "normal_derivative_wedge");
    const double dr = rx - e.radius;
    return flush(std::exp(-0.5 * dr * dr) / e.radius * s);
}

WedgeSeriesRow::WedgeSeriesRow(double beta, double theta_x, double z, const SeriesTolerance& tol,
                               std::optional<int> fixed_terms)
    : beta_(beta), nu_(kPi / beta) {
    if (!(beta > 0.0) || !(beta < kTwoPi)) throw DomainError("wedge angle must lie in (0, 2*pi)");
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("series argument must be finite and >= 0");
    if (z == 0.0) return;
    const double scale = 2.0 / beta;
    const int cap = fixed_terms ? *fixed_terms : static_cast<int>(std::min<std::size_t>(tol.max_terms, 1u << 30));
    double abs_sum = 0.0;
    double tail = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= cap; ++j) {
        const double nu = j * nu_;
        double log_i = 0.0;
        detail::log_bessel_i_series<double>(nu, z, 1e-17, 100000, log_i);
        const double c = std::exp(log_i - z) * scale * std::sin(j * nu_ * theta_x);
        coef_.push_back(c);
        abs_sum += std::fabs(c);
        const double ratio = std::exp(log_lead((j + 2) * nu_, z) - log_lead((j + 1) * nu_, z));
        if (ratio >= 1.0) continue;
        tail = std::exp(log_scaled_bessel_bound((j + 1) * nu_, z)) * scale / (1.0 - ratio);
        if (tail <= tol.rel_tol * abs_sum || tail < kFlushBelow) return;
    }
    throw SeriesNotConverged("wedge series row: truncation cap reached before tolerance", tail);
}

double WedgeSeriesRow::sum(double theta) const {
    if (coef_.empty()) return 0.0;
    // sin(jφ) by the Chebyshev recurrence.
    const double phi = nu_ * theta;
    const double c2 = 2.0 * std::cos(phi);
    double s_prev = 0.0;
    double s_cur = std::sin(phi);
    double acc = 0.0;
    for (double c : coef_) {
        acc += c * s_cur;
        const double s_next = c2 * s_cur - s_prev;
        s_prev = s_cur;
        s_cur = s_next;
    }
    return acc;
}

}  // namespace cone_exit
