#pragma once

#include <string_view>

#include "cone_exit/geometry.hpp"
#include "cone_exit/kernel.hpp"

namespace cone_exit {

struct QuadratureSpec {
    int radial_nodes = 256;   // per radial panel
    int angular_nodes = 128;  // per angular panel
    double radial_cutoff_sigmas = 12.0;
    /// Re-run with doubled node counts and report the relative change.
    bool self_check = true;
    /// Relative change on doubling above which the result is rejected.
    double self_check_tol = 1e-6;

    void validate() const;
};

enum class SurvivalMethod { ClosedForm, Quadrature, Product };

std::string_view method_name(SurvivalMethod m);

struct SurvivalValue {
    double p = 0.0;
    SurvivalMethod method = SurvivalMethod::ClosedForm;
    double est_quad_error = 0.0;  // relative
    bool clamped = false;         // raw value exceeded 1 and was clamped
};

/// Standard normal CDF.
double normal_cdf(double u);

SurvivalValue survival_halfline(double x, double a, double t);

SurvivalValue survival_quarter(Vec2 x, Vec2 a, double t);

/// P_x[τ > t] from the Girsanov form
///
///   e^{-<a,x> - t|a|²/2} ∫_C e^{<a,y>} p(t,x,y) dy
///
/// in polar coordinates with composite Gauss–Legendre rules. The integrand is cut to the
/// radial band where the free Gaussian centred at x + a t carries mass above e^{-k²/2}.
SurvivalValue survival_wedge_exact(const Wedge& wedge, Vec2 a, Vec2 x, double t, const QuadratureSpec& quad = {},
                                   const KernelSpec& spec = {});

/// Same probability from the rescaled form, where the kernel is taken at time 1:
///
///   e^{-<a,x> - |x|²/2t + |x|²/2} t ∫_C e^{|w|²/2} p(1,x,w) e^{-t|a-w|²/2} dw.
SurvivalValue survival_wedge_scaled(const Wedge& wedge, Vec2 a, Vec2 x, double t, const QuadratureSpec& quad = {},
                                    const KernelSpec& spec = {});

/// ∫_C p(t,x,y) dy, the driftless survival probability.
SurvivalValue wedge_mass(const Wedge& wedge, Vec2 x, double t, const QuadratureSpec& quad = {},
                         const KernelSpec& spec = {});

/// ∫_C p(s,x,w) p(t,w,y) dw by the same polar quadrature (Chapman–Kolmogorov checks).
double wedge_kernel_convolution(const Wedge& wedge, double s, double t, Vec2 x, Vec2 y,
                                const QuadratureSpec& quad = {}, const KernelSpec& spec = {});

}  // namespace cone_exit
