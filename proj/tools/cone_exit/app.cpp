#include "app.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <string>

#include "commands.hpp"
#include "cone_exit/errors.hpp"

namespace cone_exit::cli {

namespace {

struct RawLists {
    std::string drift;
    std::string start;
    std::string horizons;
    std::string methods;
};

void add_options(CLI::App& app, RunConfig& c, RawLists& raw) {
    app.add_option("--domain", c.domain, "wedge, halfline, quarter or weyl")->capture_default_str();
    app.add_option("--beta", c.beta, "Wedge opening angle in radians, in (0, 2*pi)")->capture_default_str();
    app.add_option("--rotation", c.rotation, "Angle of the wedge's lower edge in radians")->capture_default_str();
    app.add_option("--drift", raw.drift, "Drift vector, comma separated");
    app.add_flag("--drift-polar", c.drift_polar, "Read --drift as (radius, angle from the lower edge)");
    app.add_option("--start", raw.start, "Start point, comma separated");
    app.add_flag("--start-polar", c.start_polar, "Read --start as (radius, angle from the lower edge)");
    app.add_option("--t", raw.horizons, "Horizons, comma separated");
    app.add_option("--methods", raw.methods, "Any of exact, asym, mc, comma separated");

    app.add_option("--radial-nodes", c.radial_nodes, "Gauss-Legendre nodes per radial panel")->capture_default_str();
    app.add_option("--angular-nodes", c.angular_nodes, "Gauss-Legendre nodes per angular panel")
        ->capture_default_str();
    app.add_option("--cutoff-sigmas", c.cutoff_sigmas, "Radial cutoff in standard deviations")
        ->capture_default_str();
    app.add_option("--series-tol", c.series_tol, "Relative tolerance of the kernel series")->capture_default_str();
    app.add_option("--truncation", c.truncation, "Fixed series cap J (0 = adaptive)")->capture_default_str();

    app.add_option("--paths", c.paths, "Monte Carlo paths")->capture_default_str();
    app.add_option("--dt", c.dt, "Monte Carlo time step")->capture_default_str();
    app.add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
    app.add_flag("--bridge,!--no-bridge", c.bridge, "Brownian-bridge crossing correction");
    app.add_option("--chunk", c.chunk, "Paths per random substream")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (0 = CONE_EXIT_THREADS or all cores)")
        ->capture_default_str();
    app.add_option("--mc-sigmas", c.mc_sigmas, "Allowed Monte Carlo deviation in standard errors")
        ->capture_default_str();

    app.add_option("--grid", c.grid, "Map grid: cartesian or polar")->capture_default_str();
    app.add_option("--extent", c.extent, "Map half-width (cartesian) or radius (polar)")->capture_default_str();
    app.add_option("--resolution", c.resolution, "Map points per axis")->capture_default_str();

    app.add_option("--format", c.format, "csv, json or text")->capture_default_str();
    app.add_option("--output,-o", c.output, "Output path, - for stdout")->capture_default_str();
}

void apply_lists(const RawLists& raw, RunConfig& c) {
    if (!raw.drift.empty()) c.drift = parse_list(raw.drift, "--drift");
    if (!raw.start.empty()) c.start = parse_list(raw.start, "--start");
    if (!raw.horizons.empty()) c.horizons = parse_list(raw.horizons, "--t");
    if (!raw.methods.empty()) c.methods = split_words(raw.methods);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    RawLists raw;
    CLI::App app{"Survival probabilities of drifted Brownian motion in cones", "cone-exit"};
    app.set_config("--config", "", "Read key = value settings from a file");
    // List values such as "drift = 0,-1" are parsed by parse_list, not split by CLI11.
    app.get_config_formatter_base()->arrayDelimiter('\x1f');
    add_options(app, config, raw);
    app.require_subcommand(1, 1);
    CLI::App* classify = app.add_subcommand("classify", "Regime, exponents and contact points of a drift");
    CLI::App* compare = app.add_subcommand("compare", "Exact, asymptotic and Monte Carlo values per horizon");
    CLI::App* map = app.add_subcommand("map", "Regime map over a grid of drifts");
    for (CLI::App* sub : {classify, compare, map}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        apply_lists(raw, config);
        config.command = app.get_subcommands().front()->get_name();
        if (config.command == "classify" && app.count("--format") == 0) config.format = "text";
        if (config.format != "csv" && config.format != "json" && config.format != "text") {
            throw DomainError("unknown output format '" + config.format + "'");
        }

        Report report;
        if (config.command == "classify") report = cmd_classify(config);
        else if (config.command == "compare") report = cmd_compare(config);
        else report = cmd_map(config);

        if (config.output == "-") {
            write_report(config, report, out);
        } else {
            std::ofstream file(config.output);
            if (!file) throw DomainError("cannot open output file '" + config.output + "'");
            write_report(config, report, file);
        }
        for (const auto& w : report.warnings) err << "warning: " << w << '\n';
        if (report.exit_code == kCrossCheck) err << "error: cross-check failed\n";
        return report.exit_code;
    } catch (const SeriesNotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kUnconverged;
    } catch (const QuadratureNotConverged& e) {
        err << "error: " << e.what() << '\n';
        return kUnconverged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace cone_exit::cli
