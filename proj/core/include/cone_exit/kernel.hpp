#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cone_exit/geometry.hpp"
#include "cone_exit/spectral.hpp"

namespace cone_exit {

enum class KernelBackend { WedgeSeries, HalfLine, QuarterProduct, WeylKarlinMcGregor };

std::string_view backend_name(KernelBackend b);

struct KernelSpec {
    KernelBackend backend = KernelBackend::WedgeSeries;
    /// Fixed series index cap J for the wedge series; adaptive when empty.
    std::optional<int> truncation;
    SeriesTolerance tol;

    void validate() const;
};

/// Centered Gaussian density of variance t.
double gaussian_density(double t, double x);

/// Dirichlet heat kernel of a planar wedge via the eigenfunction expansion
///
///   p(t,x,y) = e^{-(|x|²+|y|²)/2t} / t · Σ_j I_{α_j}(|x||y|/t) m_j(θ_x) m_j(θ_y).
///
/// The terms are summed in the exponentially scaled form e^{-z} I_ν(z). Truncation is
/// certified by I_ν(z) ≤ (z/2)^ν min(e^z, e^{z²/4(ν+1)}) / Γ(ν+1). When the alternating
/// sum cancels below what double precision resolves, it is recomputed in binary128.
/// x and y are Cartesian points in the plane; on the boundary the kernel is 0.
double heat_kernel_wedge(const Wedge& wedge, double t, Vec2 x, Vec2 y, const KernelSpec& spec = {});

/// Half-line (0, ∞) kernel φ_t(x − y) − φ_t(x + y).
double heat_kernel_halfline(double t, double x, double y);

/// Quarter plane (0, ∞)² as a product of half-line kernels.
double heat_kernel_quarter(double t, Vec2 x, Vec2 y);

/// Weyl chamber {x_1 < … < x_d}: Karlin–McGregor determinant det(p(t, x_i, y_j)).
double heat_kernel_weyl(double t, std::span<const double> x, std::span<const double> y);

/// The determinant without the ordering precondition (antisymmetric in y).
double karlin_mcgregor_determinant(double t, std::span<const double> x, std::span<const double> y);

/// Inward normal derivative ∂_n p(1, x, a) at a non-apex boundary point a, by term-wise
/// differentiation of the eigen-series in the orthonormal eigenfunction convention.
double normal_derivative_wedge(const Wedge& wedge, Vec2 x, Vec2 a, const KernelSpec& spec = {});

/// Inward unit normal of the edge containing the boundary point a (Cartesian frame).
Vec2 inward_normal(const Wedge& wedge, Vec2 a, double angle_tol = kDefaultAngleTol);

/// Coefficients c_j = e^{-z} I_{α_j}(z) m_j(θ_x) of the wedge series at one radius product
/// z = |x||y|/t, so that p = e^{-(|x|-|y|)²/2t} / t · Σ_j c_j m_j(θ_y).
///
/// Used by the quadrature routines, which evaluate many θ_y per radius. Truncation is
/// relative to the accumulated absolute sum.
class WedgeSeriesRow {
public:
    WedgeSeriesRow(double beta, double theta_x, double z, const SeriesTolerance& tol,
                   std::optional<int> fixed_terms = {});

    /// Σ_j c_j m_j(θ) for θ in [0, beta] (canonical frame).
    double sum(double theta) const;

    std::size_t terms() const { return coef_.size(); }

private:
    double beta_;
    double nu_;  // π / beta
    std::vector<double> coef_;  // c_j · sqrt(2/beta)
};

}  // namespace cone_exit
