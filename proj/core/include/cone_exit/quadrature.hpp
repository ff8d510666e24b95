#pragma once

#include <functional>
#include <span>
#include <vector>

namespace cone_exit {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss–Legendre rule on [-1, 1]. Rules are cached; the returned reference stays valid.
const QuadratureRule& gauss_legendre(int n);

/// Composite Gauss–Legendre rule with n nodes on every panel between consecutive breakpoints.
/// Breakpoints are sorted, clipped to [lo, hi] and de-duplicated.
QuadratureRule composite_gauss_legendre(double lo, double hi, std::span<const double> breakpoints, int n);

/// ∫_lo^hi f with an n-point Gauss–Legendre rule.
double integrate(const std::function<double(double)>& f, double lo, double hi, int n);

}  // namespace cone_exit
