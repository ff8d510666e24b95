#include "cone_exit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "cone_exit/errors.hpp"
#include "cone_exit/geometry.hpp"

namespace cone_exit {

namespace {

QuadratureRule build_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi's initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(build_gauss_legendre(n));
    return *slot;
}

QuadratureRule composite_gauss_legendre(double lo, double hi, std::span<const double> breakpoints, int n) {
    if (!(hi > lo)) throw DomainError("composite rule needs hi > lo");
    std::vector<double> cuts{lo, hi};
    for (double b : breakpoints) {
        if (std::isfinite(b) && b > lo && b < hi) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    const double min_width = 1e-9 * (hi - lo);
    std::vector<double> kept{cuts.front()};
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        if (cuts[i] - kept.back() > min_width) kept.push_back(cuts[i]);
    }
    kept.back() = hi;

    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule out;
    out.nodes.reserve((kept.size() - 1) * n);
    out.weights.reserve((kept.size() - 1) * n);
    for (std::size_t p = 0; p + 1 < kept.size(); ++p) {
        const double half = 0.5 * (kept[p + 1] - kept[p]);
        const double mid = 0.5 * (kept[p + 1] + kept[p]);
        for (int i = 0; i < n; ++i) {
            out.nodes.push_back(mid + half * base.nodes[i]);
            out.weights.push_back(half * base.weights[i]);
        }
    }
    return out;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int n) {
    const QuadratureRule& base = gauss_legendre(n);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += base.weights[i] * f(mid + half * base.nodes[i]);
    return half * acc;
}

}  // namespace cone_exit
