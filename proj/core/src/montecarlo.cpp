#include "cone_exit/montecarlo.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>

#include "cone_exit/errors.hpp"

namespace cone_exit {

namespace {

// exp(-q) below this is treated as no crossing; saves a uniform draw on most steps.
constexpr double kNegligibleExponent = 40.0;

struct HalfLineModel {
    int dim() const { return 1; }
    bool inside(const double* p) const { return p[0] >= 0.0; }
    double survive(const double* p0, const double* p1, double dt) const {
        const double q = 2.0 * p0[0] * p1[0] / dt;
        return q > kNegligibleExponent ? 1.0 : -std::expm1(-q);
    }
};

struct QuarterModel {
    int dim() const { return 2; }
    bool inside(const double* p) const { return p[0] >= 0.0 && p[1] >= 0.0; }
    double survive(const double* p0, const double* p1, double dt) const {
        double s = 1.0;
        for (int i = 0; i < 2; ++i) {
            const double q = 2.0 * p0[i] * p1[i] / dt;
            if (q <= kNegligibleExponent) s *= -std::expm1(-q);
        }
        return s;
    }
};

struct WeylModel {
    int d;
    int dim() const { return d; }
    bool inside(const double* p) const {
        for (int i = 0; i + 1 < d; ++i) {
            if (p[i + 1] < p[i]) return false;
        }
        return true;
    }
    double survive(const double* p0, const double* p1, double dt) const {
        double s = 1.0;
        for (int i = 0; i + 1 < d; ++i) {
            // Signed distances (x_{i+1} - x_i)/√2; their product carries a factor 1/2.
            const double q = (p0[i + 1] - p0[i]) * (p1[i + 1] - p1[i]) / dt;
            if (q <= kNegligibleExponent) s *= -std::expm1(-q);
        }
        return s;
    }
};

struct WedgeModel {
    Vec2 n0, n1;  // inward unit normals of the two edges
    Vec2 e0, e1;  // edge directions
    bool convex;  // beta <= pi

    explicit WedgeModel(const Wedge& w) : convex(w.beta() <= kPi) {
        const double b = w.beta();
        n0 = w.from_canonical({0.0, 1.0});
        n1 = w.from_canonical({std::sin(b), -std::cos(b)});
        e0 = w.from_canonical({1.0, 0.0});
        e1 = w.from_canonical({std::cos(b), std::sin(b)});
    }
    int dim() const { return 2; }
    bool inside(const double* p) const {
        const double d0 = n0.x * p[0] + n0.y * p[1];
        const double d1 = n1.x * p[0] + n1.y * p[1];
        return convex ? (d0 >= 0.0 && d1 >= 0.0) : !(d0 < 0.0 && d1 < 0.0);
    }
    double edge_factor(Vec2 n, Vec2 e, const double* p0, const double* p1, double dt) const {
        const double d0 = n.x * p0[0] + n.y * p0[1];
        const double d1 = n.x * p1[0] + n.y * p1[1];
        if (!(d0 > 0.0 && d1 > 0.0)) return 1.0;
        // A reflex wedge is bounded by rays, not lines: only steps beside the ray count.
        if (!convex && !(e.x * p0[0] + e.y * p0[1] > 0.0 && e.x * p1[0] + e.y * p1[1] > 0.0)) return 1.0;
        const double q = 2.0 * d0 * d1 / dt;
        return q > kNegligibleExponent ? 1.0 : -std::expm1(-q);
    }
    double survive(const double* p0, const double* p1, double dt) const {
        return edge_factor(n0, e0, p0, p1, dt) * edge_factor(n1, e1, p0, p1, dt);
    }
};

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32),
                      std::uint32_t{0x9e3779b9u}};
    return std::mt19937_64(seq);
}

template <class Model>
std::uint64_t run_chunk(const Model& model, std::span<const double> a, std::span<const double> x, double t,
                        const McConfig& cfg, std::uint64_t chunk_index, std::uint64_t count) {
    auto engine = chunk_engine(cfg.seed, chunk_index);
    boost::random::normal_distribution<double> normal;
    boost::random::uniform_01<double> uniform;
    const int d = model.dim();
    const auto full_steps = static_cast<std::uint64_t>(std::floor(t / cfg.dt * (1.0 + 1e-12)));
    const double remainder = t - static_cast<double>(full_steps) * cfg.dt;
    const bool extra = remainder > 1e-12 * cfg.dt;

    std::vector<double> pos(d), prev(d);
    std::uint64_t survivors = 0;
    for (std::uint64_t path = 0; path < count; ++path) {
        for (int i = 0; i < d; ++i) pos[i] = x[i];
        bool alive = true;
        const std::uint64_t steps = full_steps + (extra ? 1 : 0);
        for (std::uint64_t s = 0; s < steps && alive; ++s) {
            const double h = (s < full_steps) ? cfg.dt : remainder;
            const double sh = std::sqrt(h);
            prev.swap(pos);
            for (int i = 0; i < d; ++i) pos[i] = prev[i] + a[i] * h + sh * normal(engine);
            if (!model.inside(pos.data())) {
                alive = false;
                break;
            }
            if (cfg.bridge_correction) {
                const double keep = model.survive(prev.data(), pos.data(), h);
                if (keep < 1.0 && uniform(engine) >= keep) alive = false;
            }
        }
        if (alive) ++survivors;
    }
    return survivors;
}

template <class Model>
std::uint64_t run_all(const Model& model, std::span<const double> a, std::span<const double> x, double t,
                      const McConfig& cfg) {
    const std::uint64_t chunks = (cfg.paths + cfg.chunk - 1) / cfg.chunk;
    std::vector<std::uint64_t> tally(chunks, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            const std::uint64_t begin = c * cfg.chunk;
            const std::uint64_t count = std::min(cfg.chunk, cfg.paths - begin);
            tally[c] = run_chunk(model, a, x, t, cfg, c, count);
        }
    };
    const unsigned threads = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_thread_count(cfg.threads), chunks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    std::uint64_t total = 0;
    for (std::uint64_t v : tally) total += v;
    return total;
}

void check_dimension(std::span<const double> v, int d, const char* what) {
    if (static_cast<int>(v.size()) != d) {
        throw DomainError(std::string(what) + " has dimension " + std::to_string(v.size()) + ", expected " +
                          std::to_string(d));
    }
    for (double e : v) {
        if (!std::isfinite(e)) throw DomainError(std::string(what) + " must be finite");
    }
}

}  // namespace

int domain_dimension(const Domain& domain) {
    return std::visit(
        [](const auto& dom) -> int {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, HalfLineDomain>) return 1;
            else if constexpr (std::is_same_v<T, WeylDomain>) return dom.d;
            else return 2;
        },
        domain);
}

std::string domain_label(const Domain& domain) {
    return std::visit(
        [](const auto& dom) -> std::string {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, HalfLineDomain>) return "halfline";
            else if constexpr (std::is_same_v<T, QuarterDomain>) return "quarter";
            else if constexpr (std::is_same_v<T, WeylDomain>) return "weyl" + std::to_string(dom.d);
            else return "wedge";
        },
        domain);
}

void McConfig::validate(double t) const {
    if (paths < 1) throw DomainError("Monte Carlo needs at least one path");
    if (chunk < 1) throw DomainError("Monte Carlo chunk size must be >= 1");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("horizon t must be positive and finite");
    if (!(dt > 0.0) || !(dt <= t)) throw DomainError("step size must satisfy 0 < dt <= t");
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CONE_EXIT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

McEstimate mc_survival(const Domain& domain, std::span<const double> a, std::span<const double> x, double t,
                       const McConfig& cfg) {
    cfg.validate(t);
    const int d = domain_dimension(domain);
    if (d < 1) throw DomainError("domain dimension must be >= 1");
    check_dimension(a, d, "drift");
    check_dimension(x, d, "start point");

    const std::uint64_t survivors = std::visit(
        [&](const auto& dom) -> std::uint64_t {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, HalfLineDomain>) {
                if (!(x[0] > 0.0)) throw DomainError("start point must lie inside the half-line");
                return run_all(HalfLineModel{}, a, x, t, cfg);
            } else if constexpr (std::is_same_v<T, QuarterDomain>) {
                if (!(x[0] > 0.0 && x[1] > 0.0)) throw DomainError("start point must lie inside the quarter plane");
                return run_all(QuarterModel{}, a, x, t, cfg);
            } else if constexpr (std::is_same_v<T, WeylDomain>) {
                if (!in_weyl_chamber(x)) throw DomainError("start point must lie inside the Weyl chamber");
                return run_all(WeylModel{dom.d}, a, x, t, cfg);
            } else {
                if (!dom.wedge.contains(Vec2{x[0], x[1]})) throw DomainError("start point must lie inside the wedge");
                return run_all(WedgeModel(dom.wedge), a, x, t, cfg);
            }
        },
        domain);

    McEstimate est;
    est.paths = cfg.paths;
    est.survivors = survivors;
    est.p_hat = static_cast<double>(survivors) / static_cast<double>(cfg.paths);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(cfg.paths));
    est.dt = cfg.dt;
    est.seed = cfg.seed;
    est.bridge_correction = cfg.bridge_correction;
    return est;
}

std::vector<ProbeRow> mc_convergence_probe(const Domain& domain, std::span<const double> a,
                                           std::span<const double> x, double t, const McConfig& cfg,
                                           std::span<const double> dt_ladder) {
    if (dt_ladder.empty()) throw DomainError("dt ladder must not be empty");
    for (std::size_t i = 1; i < dt_ladder.size(); ++i) {
        if (!(dt_ladder[i] < dt_ladder[i - 1])) throw DomainError("dt ladder must be strictly decreasing");
    }
    std::vector<ProbeRow> rows;
    for (double dt : dt_ladder) {
        McConfig c = cfg;
        c.dt = dt;
        ProbeRow row;
        row.dt = dt;
        c.bridge_correction = true;
        row.corrected = mc_survival(domain, a, x, t, c);
        c.bridge_correction = false;
        row.uncorrected = mc_survival(domain, a, x, t, c);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cone_exit
