#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

#include "cone_exit/asymptotics.hpp"
#include "cone_exit/errors.hpp"
#include "cone_exit/geometry.hpp"
#include "cone_exit/montecarlo.hpp"
#include "cone_exit/survival.hpp"

namespace cone_exit::cli {

namespace {

// A 2D Weyl chamber {x1 < x2} is the half-plane wedge of angle π whose lower edge points along (1,1).
const Wedge kWeyl2(kPi, 0.25 * kPi);

struct Instance {
    std::string domain;
    Wedge wedge{0.5 * kPi};
    std::vector<double> a;
    std::vector<double> x;

    bool planar() const { return domain == "wedge" || domain == "quarter" || (domain == "weyl" && a.size() == 2); }
    Vec2 a2() const { return {a[0], a[1]}; }
    Vec2 x2() const { return {x[0], x[1]}; }
};

std::vector<double> from_polar(const Wedge& w, const std::vector<double>& v, const char* what) {
    if (v.size() != 2) throw DomainError(std::string(what) + " in polar form needs (radius, angle)");
    const Vec2 p = w.from_canonical(v[0] * unit(v[1]));
    return {p.x, p.y};
}

Instance resolve(const RunConfig& c, bool need_start) {
    Instance in;
    in.domain = c.domain;
    if (c.domain == "wedge") {
        in.wedge = Wedge(c.beta, c.rotation);
    } else if (c.domain == "quarter") {
        in.wedge = Wedge(0.5 * kPi);
    } else if (c.domain == "weyl") {
        in.wedge = kWeyl2;
    } else if (c.domain != "halfline") {
        throw DomainError("unknown domain '" + c.domain + "' (expected wedge, halfline, quarter or weyl)");
    }
    in.a = c.drift_polar ? from_polar(in.wedge, c.drift, "drift") : c.drift;
    in.x = c.start_polar ? from_polar(in.wedge, c.start, "start") : c.start;

    const std::size_t d = in.domain == "halfline" ? 1 : (in.domain == "weyl" ? in.a.size() : 2);
    if (in.a.size() != d) throw DomainError("drift has dimension " + std::to_string(in.a.size()) + ", expected " +
                                            std::to_string(d));
    if (need_start && in.x.size() != d) {
        throw DomainError("start point has dimension " + std::to_string(in.x.size()) + ", expected " +
                          std::to_string(d));
    }
    if (d == 0) throw DomainError("drift must not be empty");
    return in;
}

std::string minimizer_text(const std::vector<Vec2>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ";";
        out += format_double(pts[i].x) + " " + format_double(pts[i].y);
    }
    return out;
}

void proximity_warning(const Wedge& w, Vec2 a, std::vector<std::string>& warnings) {
    const double gap = regime_boundary_angle(w, a);
    if (gap < kProximityWarning) {
        warnings.push_back("drift direction is " + format_double(gap) +
                           " rad from a regime boundary, where the asymptotic law changes discontinuously");
    }
}

struct Classification {
    char regime;
    std::string name;
    double gamma;
    double alpha;
    std::string alpha_expr;
    std::string polar;
    std::string minimizers;
    double alpha1;
};

Classification classify_instance(const Instance& in, std::vector<std::string>& warnings) {
    Classification c;
    if (in.domain == "halfline") {
        const double a = in.a[0];
        const Regime r = a < 0.0 ? Regime::PolarInterior : (a == 0.0 ? Regime::Zero : Regime::Interior);
        c.regime = regime_letter(r);
        c.name = std::string(regime_name(r));
        c.gamma = a < 0.0 ? 0.5 * a * a : 0.0;
        c.alpha1 = 0.5;
        // On the half-line p₁ = 1 while α₁ = 1/2, so case B reads p₁/2 = 1/2.
        const AlphaForm f = r == Regime::Zero ? AlphaForm{1, 2, 0, 1} : alpha_form(r);
        c.alpha = f.value(c.alpha1);
        c.alpha_expr = r == Regime::Zero ? "1/2" : f.expr();
        c.polar = a < 0.0 ? "interior" : (a == 0.0 ? "boundary" : "exterior");
        c.minimizers = a < 0.0 ? "0" : format_double(a);
        return c;
    }
    if (!in.planar()) {
        if (!in_weyl_chamber(in.a)) {
            throw DomainError("classification in a Weyl chamber of dimension > 2 needs an interior drift");
        }
        c.regime = regime_letter(Regime::Interior);
        c.name = std::string(regime_name(Regime::Interior));
        c.gamma = 0.0;
        c.alpha = 0.0;
        c.alpha_expr = "0";
        c.polar = "exterior";
        c.minimizers = join(in.a);
        c.alpha1 = std::nan("");
        return c;
    }
    const Vec2 a = in.a2();
    const Regime r = classify_regime(in.wedge, a);
    const Projection proj = project_onto_cone(in.wedge, a);
    const AlphaForm f = alpha_form(r);
    c.regime = regime_letter(r);
    c.name = std::string(regime_name(r));
    c.gamma = proj.gamma;
    c.alpha1 = kPi / in.wedge.beta();
    c.alpha = f.value(c.alpha1);
    c.alpha_expr = f.expr();
    c.polar = std::string(polar_membership_name(polar_membership(in.wedge, a)));
    c.minimizers = minimizer_text(proj.minimizers);
    proximity_warning(in.wedge, a, warnings);
    return c;
}

AsymptoticLaw law_for(const Instance& in, const KernelSpec& spec) {
    if (in.domain == "halfline") return asymptotic_law_halfline(in.a[0], in.x[0]);
    if (in.domain == "weyl") {
        if (in_weyl_chamber(in.a)) return asymptotic_law_weyl_interior(in.a, in.x);
        if (in.a.size() != 2) {
            throw DomainError("asymptotics in a Weyl chamber of dimension > 2 need an interior drift");
        }
    }
    return asymptotic_law(in.wedge, in.a2(), in.x2(), spec);
}

SurvivalValue exact_for(const Instance& in, double t, const RunConfig& c) {
    if (in.domain == "halfline") return survival_halfline(in.x[0], in.a[0], t);
    if (in.domain == "quarter") return survival_quarter(in.x2(), in.a2(), t);
    if (in.domain == "weyl") {
        if (in.a.size() == 1) return SurvivalValue{1.0, SurvivalMethod::ClosedForm, 0.0, false};
        if (in.a.size() != 2) throw DomainError("exact survival in a Weyl chamber is available for d <= 2");
        // x2 - x1 is a Brownian motion of variance 2t; rescale to unit variance.
        const double s = std::sqrt(0.5);
        return survival_halfline(s * (in.x[1] - in.x[0]), s * (in.a[1] - in.a[0]), t);
    }
    return survival_wedge_exact(in.wedge, in.a2(), in.x2(), t, c.quadrature(), c.kernel());
}

Domain mc_domain(const Instance& in) {
    if (in.domain == "halfline") return HalfLineDomain{};
    if (in.domain == "quarter") return QuarterDomain{};
    if (in.domain == "weyl") return WeylDomain{static_cast<int>(in.a.size())};
    return WedgeDomain{in.wedge};
}

}  // namespace

Report cmd_classify(const RunConfig& config) {
    const Instance in = resolve(config, false);
    Report rep;
    const Classification c = classify_instance(in, rep.warnings);
    rep.table.columns = {"regime", "regime_name", "gamma", "alpha", "alpha_expr", "alpha1", "polar", "minimizers"};
    rep.table.rows.push_back({std::string(1, c.regime), c.name, c.gamma, c.alpha, c.alpha_expr,
                              std::isfinite(c.alpha1) ? Cell{c.alpha1} : Cell{}, c.polar, c.minimizers});
    rep.verdict = {{"regime", std::string(1, c.regime)}, {"alpha_expr", c.alpha_expr}};
    return rep;
}

Report cmd_compare(const RunConfig& config) {
    std::set<std::string> methods;
    for (const auto& m : config.methods) {
        if (m != "exact" && m != "asym" && m != "mc") throw DomainError("unknown method '" + m + "'");
        methods.insert(m);
    }
    if (methods.size() < 2) throw DomainError("compare needs at least two of exact, asym, mc");
    if (config.horizons.empty()) throw DomainError("compare needs at least one horizon");
    for (double t : config.horizons) {
        if (!(t > 0.0)) throw DomainError("horizons must be positive");
    }
    const bool use_exact = methods.count("exact") > 0;
    const bool use_asym = methods.count("asym") > 0;
    const bool use_mc = methods.count("mc") > 0;

    const Instance in = resolve(config, true);
    Report rep;
    if (in.planar() && in.domain != "halfline") proximity_warning(in.wedge, in.a2(), rep.warnings);

    std::optional<AsymptoticLaw> law;
    if (use_asym) law = law_for(in, config.kernel());
    const Domain dom = mc_domain(in);
    const McConfig mc_cfg = config.monte_carlo();

    rep.table.columns = {"t", "exact", "exact_err", "asym", "ratio", "mc", "mc_se", "mc_z", "status"};
    std::vector<double> ratios;
    std::vector<std::string> failures;
    for (double t : config.horizons) {
        std::vector<Cell> row(rep.table.columns.size());
        row[0] = t;
        std::optional<double> exact, exact_err, asym, mc, mc_se;
        if (use_exact) {
            const SurvivalValue v = exact_for(in, t, config);
            exact = v.p;
            exact_err = v.est_quad_error;
            if (v.clamped) rep.warnings.push_back("exact value above 1 clamped at t=" + format_double(t));
        }
        if (use_asym) asym = law->evaluate(t);
        if (use_mc) {
            const McEstimate e = mc_survival(dom, in.a, in.x, t, mc_cfg);
            mc = e.p_hat;
            mc_se = e.std_err;
        }
        std::string status = "ok";
        if (exact) {
            row[1] = *exact;
            row[2] = *exact_err;
        }
        if (asym) {
            row[3] = *asym;
            const std::optional<double> ref = exact ? exact : mc;
            if (ref) {
                row[4] = *ref / *asym;
                ratios.push_back(*ref / *asym);
            }
        }
        if (mc) {
            row[5] = *mc;
            row[6] = *mc_se;
            if (exact) {
                // A zero standard error (no or all survivors) falls back to one path's weight.
                const double se = std::max(*mc_se, 1.0 / static_cast<double>(config.paths));
                const double z = (*mc - *exact) / se;
                row[7] = z;
                const double slack = 3.0 * *exact_err * std::fabs(*exact) / se;
                if (std::fabs(z) > config.mc_sigmas + slack) {
                    status = "mc-disagrees";
                    failures.push_back("t=" + format_double(t) + ": Monte Carlo differs from exact by " +
                                       format_double(z) + " standard errors");
                }
            }
        }
        row[8] = status;
        rep.table.rows.push_back(std::move(row));
    }

    std::string trend = "n/a";
    if (use_asym && ratios.size() >= 3) {
        trend = std::string(trend_name(classify_trend(ratios)));
        if (trend == "diverging") failures.push_back("asymptotic ratio diverges from 1");
    }
    rep.verdict = {{"trend", trend}, {"passed", failures.empty()}, {"failures", failures}};
    if (law) {
        rep.verdict["regime"] = std::string(1, regime_letter(law->regime));
        rep.verdict["alpha"] = law->alpha;
        rep.verdict["gamma"] = law->gamma;
        rep.verdict["prefactor"] = law->prefactor;
        rep.verdict["provenance"] = law->provenance;
    }
    rep.exit_code = failures.empty() ? kOk : kCrossCheck;
    return rep;
}

Report cmd_map(const RunConfig& config) {
    if (config.domain != "wedge" && config.domain != "quarter") {
        throw DomainError("map is available for the wedge and quarter domains");
    }
    if (config.resolution < 3) throw DomainError("map resolution must be >= 3");
    if (!(config.extent > 0.0)) throw DomainError("map extent must be positive");
    const Wedge w = config.domain == "quarter" ? Wedge(0.5 * kPi) : Wedge(config.beta, config.rotation);
    const double beta = w.beta();
    const double alpha1 = kPi / beta;

    std::vector<Vec2> drifts;
    if (config.grid == "cartesian") {
        const int n = config.resolution;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double a1 = -config.extent + 2.0 * config.extent * i / (n - 1);
                const double a2 = -config.extent + 2.0 * config.extent * j / (n - 1);
                drifts.push_back({a1, a2});
            }
        }
    } else if (config.grid == "polar") {
        // Angles symmetric about the bisector, plus every regime boundary ray.
        std::vector<double> angles;
        const int n_ang = 2 * config.resolution;
        for (int k = 0; k < n_ang; ++k) angles.push_back(wrap_angle(0.5 * beta + kTwoPi * k / n_ang));
        angles.push_back(0.0);
        angles.push_back(beta);
        if (beta <= kPi) {
            angles.push_back(wrap_angle(beta + 0.5 * kPi));
            angles.push_back(1.5 * kPi);
        }
        std::sort(angles.begin(), angles.end());
        angles.erase(std::unique(angles.begin(), angles.end(),
                                 [](double u, double v) { return std::fabs(u - v) < 1e-12; }),
                     angles.end());
        const int n_rad = std::max(1, (config.resolution - 1) / 2);
        drifts.push_back({0.0, 0.0});
        for (double th : angles) {
            for (int i = 1; i <= n_rad; ++i) drifts.push_back(w.from_canonical((config.extent * i / n_rad) * unit(th)));
        }
    } else {
        throw DomainError("unknown grid '" + config.grid + "' (expected cartesian or polar)");
    }

    Report rep;
    rep.table.columns = {"a1", "a2", "regime", "alpha", "gamma", "alpha_expr"};
    std::set<std::string> exprs;
    for (Vec2 a : drifts) {
        const Regime r = classify_regime(w, a);
        const AlphaForm f = alpha_form(r);
        exprs.insert(f.expr());
        rep.table.rows.push_back({a.x, a.y, std::string(1, regime_letter(r)), f.value(alpha1),
                                  project_onto_cone(w, a).gamma, f.expr()});
    }
    rep.verdict = {{"alpha1", alpha1}, {"alpha_exprs", std::vector<std::string>(exprs.begin(), exprs.end())}};
    return rep;
}

}  // namespace cone_exit::cli
