#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cone_exit/geometry.hpp"

namespace cone_exit {

struct WedgeDomain {
    Wedge wedge;
};
struct HalfLineDomain {};
struct QuarterDomain {};
struct WeylDomain {
    int d = 2;
};

using Domain = std::variant<WedgeDomain, HalfLineDomain, QuarterDomain, WeylDomain>;

int domain_dimension(const Domain& domain);
std::string domain_label(const Domain& domain);

struct McConfig {
    std::uint64_t paths = 400'000;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    bool bridge_correction = true;
    std::uint64_t chunk = 1u << 14;
    /// Worker threads; 0 means CONE_EXIT_THREADS or the hardware concurrency.
    unsigned threads = 0;

    void validate(double t) const;
};

struct McEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t paths = 0;
    std::uint64_t survivors = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool bridge_correction = true;
};

/// Thread count actually used for a request (0 = environment or hardware default).
unsigned resolve_thread_count(unsigned requested);

/// Survivor fraction of simulated drifted Brownian paths started at x.
///
/// Each chunk of paths draws from its own engine seeded by (seed, chunk index), and the
/// survivor counts are reduced in chunk order, so the result does not depend on the
/// number of threads. With bridge correction every surviving step is also killed with
/// probability 1 - Π_f (1 - exp(-2 d_f d_f' / dt)) over the boundary faces f.
McEstimate mc_survival(const Domain& domain, std::span<const double> a, std::span<const double> x, double t,
                       const McConfig& cfg);

struct ProbeRow {
    double dt = 0.0;
    McEstimate corrected;
    McEstimate uncorrected;
};

/// mc_survival with and without bridge correction along a decreasing ladder of step sizes.
std::vector<ProbeRow> mc_convergence_probe(const Domain& domain, std::span<const double> a,
                                           std::span<const double> x, double t, const McConfig& cfg,
                                           std::span<const double> dt_ladder);

}  // namespace cone_exit
