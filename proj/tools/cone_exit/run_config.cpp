#include "run_config.hpp"

#include <cstdio>
#include <sstream>

#include "cone_exit/errors.hpp"

namespace cone_exit::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
    }
    return out;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        const auto b = cur.find_first_not_of(" \t");
        const auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ';') flush();
        else if (ch != '[' && ch != ']' && ch != '"') cur += ch;
    }
    flush();
    return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& w : split_words(text)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(w, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != w.size()) throw DomainError("malformed number '" + w + "' in " + what);
        out.push_back(v);
    }
    if (out.empty()) throw DomainError(what + " must not be empty");
    return out;
}

QuadratureSpec RunConfig::quadrature() const {
    QuadratureSpec q;
    q.radial_nodes = radial_nodes;
    q.angular_nodes = angular_nodes;
    q.radial_cutoff_sigmas = cutoff_sigmas;
    return q;
}

KernelSpec RunConfig::kernel() const {
    KernelSpec k;
    k.tol.rel_tol = series_tol;
    if (truncation > 0) k.truncation = truncation;
    return k;
}

McConfig RunConfig::monte_carlo() const {
    McConfig m;
    m.paths = paths;
    m.dt = dt;
    m.seed = seed;
    m.bridge_correction = bridge;
    m.chunk = chunk;
    m.threads = threads;
    return m;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {
        {"command", command},
        {"domain", domain},
        {"beta", format_double(beta)},
        {"rotation", format_double(rotation)},
        {"drift", join(drift)},
        {"drift-polar", b(drift_polar)},
        {"start", join(start)},
        {"start-polar", b(start_polar)},
        {"t", join(horizons)},
        {"methods", join(methods)},
        {"radial-nodes", std::to_string(radial_nodes)},
        {"angular-nodes", std::to_string(angular_nodes)},
        {"cutoff-sigmas", format_double(cutoff_sigmas)},
        {"series-tol", format_double(series_tol)},
        {"truncation", std::to_string(truncation)},
        {"paths", std::to_string(paths)},
        {"dt", format_double(dt)},
        {"seed", std::to_string(seed)},
        {"bridge", b(bridge)},
        {"chunk", std::to_string(chunk)},
        {"mc-sigmas", format_double(mc_sigmas)},
        {"grid", grid},
        {"extent", format_double(extent)},
        {"resolution", std::to_string(resolution)},
        {"format", format},
        {"output", output},
    };
}

nlohmann::json to_json(const RunConfig& c) {
    return {
        {"command", c.command},
        {"domain", c.domain},
        {"beta", c.beta},
        {"rotation", c.rotation},
        {"drift", c.drift},
        {"drift_polar", c.drift_polar},
        {"start", c.start},
        {"start_polar", c.start_polar},
        {"t", c.horizons},
        {"methods", c.methods},
        {"radial_nodes", c.radial_nodes},
        {"angular_nodes", c.angular_nodes},
        {"cutoff_sigmas", c.cutoff_sigmas},
        {"series_tol", c.series_tol},
        {"truncation", c.truncation},
        {"paths", c.paths},
        {"dt", c.dt},
        {"seed", c.seed},
        {"bridge", c.bridge},
        {"chunk", c.chunk},
        {"threads", c.threads},
        {"mc_sigmas", c.mc_sigmas},
        {"grid", c.grid},
        {"extent", c.extent},
        {"resolution", c.resolution},
        {"format", c.format},
        {"output", c.output},
    };
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig c;
    j.at("command").get_to(c.command);
    j.at("domain").get_to(c.domain);
    j.at("beta").get_to(c.beta);
    j.at("rotation").get_to(c.rotation);
    j.at("drift").get_to(c.drift);
    j.at("drift_polar").get_to(c.drift_polar);
    j.at("start").get_to(c.start);
    j.at("start_polar").get_to(c.start_polar);
    j.at("t").get_to(c.horizons);
    j.at("methods").get_to(c.methods);
    j.at("radial_nodes").get_to(c.radial_nodes);
    j.at("angular_nodes").get_to(c.angular_nodes);
    j.at("cutoff_sigmas").get_to(c.cutoff_sigmas);
    j.at("series_tol").get_to(c.series_tol);
    j.at("truncation").get_to(c.truncation);
    j.at("paths").get_to(c.paths);
    j.at("dt").get_to(c.dt);
    j.at("seed").get_to(c.seed);
    j.at("bridge").get_to(c.bridge);
    j.at("chunk").get_to(c.chunk);
    j.at("threads").get_to(c.threads);
    j.at("mc_sigmas").get_to(c.mc_sigmas);
    j.at("grid").get_to(c.grid);
    j.at("extent").get_to(c.extent);
    j.at("resolution").get_to(c.resolution);
    j.at("format").get_to(c.format);
    j.at("output").get_to(c.output);
    return c;
}

}  // namespace cone_exit::cli
