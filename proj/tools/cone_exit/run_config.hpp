#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cone_exit/kernel.hpp"
#include "cone_exit/montecarlo.hpp"
#include "cone_exit/survival.hpp"

namespace cone_exit::cli {

/// Fully resolved settings of one invocation; every field has a matching flag.
struct RunConfig {
    std::string command;

    // Problem
    std::string domain = "wedge";  // wedge | halfline | quarter | weyl
    double beta = 1.5707963267948966;
    double rotation = 0.0;
    std::vector<double> drift{0.0, 0.0};
    bool drift_polar = false;  // drift given as (radius, canonical angle)
    std::vector<double> start{1.0, 1.0};
    bool start_polar = false;
    std::vector<double> horizons{1.0};
    std::vector<std::string> methods{"exact", "asym"};

    // Quadrature and kernel
    int radial_nodes = 256;
    int angular_nodes = 128;
    double cutoff_sigmas = 12.0;
    double series_tol = 1e-12;
    int truncation = 0;  // 0 = adaptive

    // Monte Carlo
    std::uint64_t paths = 400'000;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    bool bridge = true;
    std::uint64_t chunk = 1u << 14;
    unsigned threads = 0;  // not echoed: results do not depend on it
    double mc_sigmas = 4.0;

    // Map
    std::string grid = "cartesian";  // cartesian | polar
    double extent = 2.0;
    int resolution = 41;

    // Output
    std::string format = "csv";  // csv | json | text
    std::string output = "-";

    QuadratureSpec quadrature() const;
    KernelSpec kernel() const;
    McConfig monte_carlo() const;

    /// Ordered (key, value) pairs as echoed into CSV comments; doubles in %.17g.
    std::vector<std::pair<std::string, std::string>> echo() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

/// %.17g
std::string format_double(double v);
std::string join(const std::vector<double>& v);
std::string join(const std::vector<std::string>& v);

/// Parses "1,2.5,-3" (whitespace tolerant). Throws DomainError on malformed input.
std::vector<double> parse_list(const std::string& text, const std::string& what);
std::vector<std::string> split_words(const std::string& text);

}  // namespace cone_exit::cli
