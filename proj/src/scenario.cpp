#include "helixlab/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace helixlab {

using nlohmann::json;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

Vec to_vec(const std::vector<double>& xs) {
    Vec v(static_cast<int>(xs.size()));
    for (size_t i = 0; i < xs.size(); ++i) v(static_cast<int>(i)) = xs[i];
    return v;
}

double param(const std::map<std::string, double>& m, const std::string& key, double dflt) {
    auto it = m.find(key);
    return it == m.end() ? dflt : it->second;
}

// ---- patch factory -------------------------------------------------------

std::shared_ptr<const SurfacePatch> make_patch(const Scenario& sc) {
    const auto& kind = sc.patch_kind;
    const auto& pp = sc.patch_params;
    const double lo = param(pp, "lo", -20.0);
    const double hi = param(pp, "hi", 20.0);

    if (kind == "identity") {
        const int k = sc.ambient_dim;
        return std::make_shared<SurfacePatch>(
            k, k,
            [](const Vec& u) { return u; },
            Vec::Constant(k, lo), Vec::Constant(k, hi),
            [k](const Vec&) { return Mat::Identity(k, k); },
            [k](const Vec&, int, int) { return Vec::Zero(k); });
    }
    if (kind == "cylinder") {
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) { return make_vec({std::cos(u(0)), std::sin(u(0)), u(1)}); },
            make_vec({lo, lo}), make_vec({hi, hi}),
            [](const Vec& u) {
                Mat J(3, 2);
                J << -std::sin(u(0)), 0, std::cos(u(0)), 0, 0, 1;
                return J;
            },
            [](const Vec& u, int i, int j) {
                if (i == 0 && j == 0) return make_vec({-std::cos(u(0)), -std::sin(u(0)), 0.0});
                return Vec(Vec::Zero(3));
            });
    }
    if (kind == "plane") {
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) { return make_vec({u(0), u(1), 0.0}); },
            make_vec({lo, lo}), make_vec({hi, hi}),
            [](const Vec&) {
                Mat J(3, 2);
                J << 1, 0, 0, 1, 0, 0;
                return J;
            },
            [](const Vec&, int, int) { return Vec(Vec::Zero(3)); });
    }
    if (kind == "tilted_plane") { // graph z = u1
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) { return make_vec({u(0), u(1), u(0)}); },
            make_vec({lo, lo}), make_vec({hi, hi}),
            [](const Vec&) {
                Mat J(3, 2);
                J << 1, 0, 0, 1, 1, 0;
                return J;
            },
            [](const Vec&, int, int) { return Vec(Vec::Zero(3)); });
    }
    if (kind == "sphere") {
        const double u1lo = param(pp, "lo", 0.2);
        const double u1hi = param(pp, "hi", M_PI - 0.2);
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) {
                return make_vec({std::sin(u(0)) * std::cos(u(1)),
                                 std::sin(u(0)) * std::sin(u(1)), std::cos(u(0))});
            },
            make_vec({u1lo, -20.0}), make_vec({u1hi, 20.0}),
            [](const Vec& u) {
                Mat J(3, 2);
                J << std::cos(u(0)) * std::cos(u(1)), -std::sin(u(0)) * std::sin(u(1)),
                     std::cos(u(0)) * std::sin(u(1)), std::sin(u(0)) * std::cos(u(1)),
                     -std::sin(u(0)), 0;
                return J;
            },
            [](const Vec& u, int i, int j) {
                const double s1 = std::sin(u(0)), c1 = std::cos(u(0));
                const double s2 = std::sin(u(1)), c2 = std::cos(u(1));
                if (i == 0 && j == 0) return make_vec({-s1 * c2, -s1 * s2, -c1});
                if (i == 1 && j == 1) return make_vec({-s1 * c2, -s1 * s2, 0.0});
                return make_vec({-c1 * s2, c1 * c2, 0.0}); // mixed
            });
    }
    if (kind == "helicoid") {
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) {
                return make_vec({u(0) * std::cos(u(1)), u(0) * std::sin(u(1)), u(1)});
            },
            make_vec({param(pp, "lo", 0.5), -20.0}), make_vec({param(pp, "hi", 3.0), 20.0}),
            [](const Vec& u) {
                Mat J(3, 2);
                J << std::cos(u(1)), -u(0) * std::sin(u(1)),
                     std::sin(u(1)), u(0) * std::cos(u(1)),
                     0, 1;
                return J;
            },
            [](const Vec& u, int i, int j) {
                const double s = std::sin(u(1)), c = std::cos(u(1));
                if (i == 0 && j == 0) return Vec(Vec::Zero(3));
                if (i == 1 && j == 1) return make_vec({-u(0) * c, -u(0) * s, 0.0});
                return make_vec({-s, c, 0.0}); // mixed
            });
    }
    if (kind == "cone") { // z = r ruling, apex excluded
        return std::make_shared<SurfacePatch>(
            2, 3,
            [](const Vec& u) {
                return make_vec({u(0) * std::cos(u(1)), u(0) * std::sin(u(1)), u(0)});
            },
            make_vec({param(pp, "lo", 0.5), -20.0}), make_vec({param(pp, "hi", 5.0), 20.0}),
            [](const Vec& u) {
                Mat J(3, 2);
                J << std::cos(u(1)), -u(0) * std::sin(u(1)),
                     std::sin(u(1)), u(0) * std::cos(u(1)),
                     1, 0;
                return J;
            },
            [](const Vec& u, int i, int j) {
                const double s = std::sin(u(1)), c = std::cos(u(1));
                if (i == 0 && j == 0) return Vec(Vec::Zero(3));
                if (i == 1 && j == 1) return make_vec({-u(0) * c, -u(0) * s, 0.0});
                return make_vec({-s, c, 0.0});
            });
    }
    if (kind == "slab_r4") { // R^3 embedded flat in R^4
        return std::make_shared<SurfacePatch>(
            3, 4,
            [](const Vec& u) { return make_vec({u(0), u(1), u(2), 0.0}); },
            Vec::Constant(3, lo), Vec::Constant(3, hi),
            [](const Vec&) {
                Mat J = Mat::Zero(4, 3);
                J(0, 0) = J(1, 1) = J(2, 2) = 1.0;
                return J;
            },
            [](const Vec&, int, int) { return Vec(Vec::Zero(4)); });
    }
    if (kind == "torus_r4") { // flat torus S^1 x S^1 in R^4
        return std::make_shared<SurfacePatch>(
            2, 4,
            [](const Vec& u) {
                return make_vec({std::cos(u(0)), std::sin(u(0)), std::cos(u(1)), std::sin(u(1))});
            },
            make_vec({lo, lo}), make_vec({hi, hi}),
            [](const Vec& u) {
                Mat J = Mat::Zero(4, 2);
                J(0, 0) = -std::sin(u(0));
                J(1, 0) = std::cos(u(0));
                J(2, 1) = -std::sin(u(1));
                J(3, 1) = std::cos(u(1));
                return J;
            },
            [](const Vec& u, int i, int j) {
                Vec h = Vec::Zero(4);
                if (i == 0 && j == 0) {
                    h(0) = -std::cos(u(0));
                    h(1) = -std::sin(u(0));
                } else if (i == 1 && j == 1) {
                    h(2) = -std::cos(u(1));
                    h(3) = -std::sin(u(1));
                }
                return h;
            });
    }
    if (kind == "cyl3_r4") { // S^1 x R^2 in R^4
        return std::make_shared<SurfacePatch>(
            3, 4,
            [](const Vec& u) {
                return make_vec({std::cos(u(0)), std::sin(u(0)), u(1), u(2)});
            },
            Vec::Constant(3, lo), Vec::Constant(3, hi),
            [](const Vec& u) {
                Mat J = Mat::Zero(4, 3);
                J(0, 0) = -std::sin(u(0));
                J(1, 0) = std::cos(u(0));
                J(2, 1) = 1.0;
                J(3, 2) = 1.0;
                return J;
            },
            [](const Vec& u, int i, int j) {
                if (i == 0 && j == 0) {
                    return make_vec({-std::cos(u(0)), -std::sin(u(0)), 0.0, 0.0});
                }
                return Vec(Vec::Zero(4));
            });
    }
    throw ValidationError("unknown patch kind: " + kind);
}

// ---- field factory -------------------------------------------------------

std::optional<ScalarField> make_field(const Scenario& sc,
                                      const std::shared_ptr<const SurfacePatch>& patch) {
    const auto& kind = sc.field_kind;
    if (kind.empty() || kind == "none") return std::nullopt;
    ScalarField f;
    if (kind == "linear") {
        Vec a = to_vec(sc.field_coeffs);
        const double c = sc.field_constant;
        auto p = patch;
        f.chart_value = [p, a, c](const Vec& u) { return a.dot(p->point(u)) + c; };
        f.chart_partials = [p, a](const Vec& u) { return Vec(p->jacobian(u).transpose() * a); };
        f.ambient_gradient = [a](const Vec&) { return a; };
        return f;
    }
    if (kind == "paraboloid_height") { // x^2 + y^2 + z on an identity R^3 chart
        f.chart_value = [](const Vec& u) { return u(0) * u(0) + u(1) * u(1) + u(2); };
        f.chart_partials = [](const Vec& u) { return make_vec({2 * u(0), 2 * u(1), 1.0}); };
        f.ambient_gradient = [](const Vec& x) { return make_vec({2 * x(0), 2 * x(1), 1.0}); };
        return f;
    }
    if (kind == "chart_coordinate") {
        const int idx = static_cast<int>(sc.field_constant);
        f.chart_value = [idx](const Vec& u) { return u(idx); };
        f.chart_partials = [idx](const Vec& u) {
            Vec p = Vec::Zero(u.size());
            p(idx) = 1.0;
            return p;
        };
        return f;
    }
    if (kind == "constant") {
        const double c = sc.field_constant;
        f.chart_value = [c](const Vec&) { return c; };
        f.chart_partials = [](const Vec& u) { return Vec(Vec::Zero(u.size())); };
        return f;
    }
    throw ValidationError("unknown field kind: " + kind);
}

// ---- curve factory -------------------------------------------------------

ChartCurve make_unit_helix(const std::shared_ptr<const SurfacePatch>& patch,
                           double r, double c, double length) {
    const double m = std::sqrt(r * r + c * c);
    ChartCurve cc;
    cc.patch = patch;
    cc.s_min = 0.0;
    cc.s_max = length;
    cc.u_of_s = [r, c, m](double s) {
        return make_vec({r * std::cos(s / m), r * std::sin(s / m), c * s / m});
    };
    cc.du_of_s = [r, c, m](double s) {
        return make_vec({-r / m * std::sin(s / m), r / m * std::cos(s / m), c / m});
    };
    cc.ddu_of_s = [r, m](double s) {
        return make_vec({-r / (m * m) * std::cos(s / m), -r / (m * m) * std::sin(s / m), 0.0});
    };
    return cc;
}

ChartCurve make_curve(const Scenario& sc, const ScenarioInstance& inst) {
    const auto& kind = sc.curve_kind;
    const auto& cp = sc.curve_params;
    auto patch = inst.patch;

    if (kind == "helix") {
        return make_unit_helix(patch, param(cp, "radius", 1.0), param(cp, "pitch", 1.0),
                               param(cp, "length", 10.0));
    }
    if (kind == "vertical_line") {
        const double x0 = param(cp, "x0", 1.0), y0 = param(cp, "y0", 0.0);
        const double length = param(cp, "length", 10.0);
        ChartCurve cc;
        cc.patch = patch;
        cc.s_min = 0.0;
        cc.s_max = length;
        cc.u_of_s = [x0, y0](double s) { return make_vec({x0, y0, s}); };
        cc.du_of_s = [](double) { return make_vec({0.0, 0.0, 1.0}); };
        cc.ddu_of_s = [](double) { return Vec(Vec::Zero(3)); };
        return cc;
    }
    if (kind == "chart_line") {
        Vec u0 = to_vec(sc.curve_u0);
        Vec v0 = to_vec(sc.curve_v0);
        const double length = param(cp, "length", 10.0);
        // Normalize to unit ambient speed through the metric at u0.
        Mat g = metric(*patch, u0);
        v0 /= std::sqrt(v0.dot(g * v0));
        ChartCurve cc;
        cc.patch = patch;
        cc.s_min = 0.0;
        cc.s_max = length;
        cc.u_of_s = [u0, v0](double s) { return Vec(u0 + s * v0); };
        cc.du_of_s = [v0](double) { return v0; };
        const int k = patch->k();
        cc.ddu_of_s = [k](double) { return Vec(Vec::Zero(k)); };
        return cc;
    }
    if (kind == "perturbed_helix") {
        const double r = param(cp, "radius", 1.0);
        const double c = param(cp, "pitch", 1.0);
        const double e = param(cp, "perturb", 0.05);
        const double t_max = param(cp, "t_max", 8.0);
        Curve base;
        base.ambient_dim = 3;
        base.s_min = 0.0;
        base.s_max = t_max;
        base.map = [r, c, e](double t) {
            return make_vec({r * std::cos(t), r * std::sin(t), c * t + e * t * t});
        };
        base.analytic_derivative = [r, c, e](double t, int order) -> Vec {
            switch (order) {
            case 1: return make_vec({-r * std::sin(t), r * std::cos(t), c + 2 * e * t});
            case 2: return make_vec({-r * std::cos(t), -r * std::sin(t), 2 * e});
            default: return make_vec({r * std::sin(t), -r * std::cos(t), 0.0});
            }
        };
        Curve unit = arclength_reparametrize(base, 2048);
        ChartCurve cc;
        cc.patch = patch;
        cc.s_min = unit.s_min;
        cc.s_max = unit.s_max;
        cc.u_of_s = unit.map;
        cc.ambient_override = unit;
        return cc;
    }
    if (kind == "geodesic") {
        Vec u0 = to_vec(sc.curve_u0);
        Vec v0 = to_vec(sc.curve_v0);
        Mat g = metric(*patch, u0);
        v0 /= std::sqrt(v0.dot(g * v0));
        return geodesic(patch, u0, v0, param(cp, "length", 10.0), param(cp, "step", 1e-3));
    }
    if (kind == "helix_line") {
        if (!inst.direction) throw ValidationError("helix_line curve requires a direction");
        Vec u0 = to_vec(sc.curve_u0);
        return helix_lines(patch, *inst.direction, u0, param(cp, "length", 5.0),
                           param(cp, "step", 1e-3));
    }
    throw ValidationError("unknown curve kind: " + kind);
}

double check_tolerance(const Scenario& sc, const std::string& check) {
    auto it = sc.tolerances.find(check);
    if (it != sc.tolerances.end()) return it->second;
    it = sc.tolerances.find("default");
    if (it != sc.tolerances.end()) return it->second;
    return kAnalyticTol;
}

HelixVerdict wrap_report(const std::string& kind, CheckReport rep) {
    HelixVerdict hv;
    hv.kind = kind;
    hv.report = std::move(rep);
    return hv;
}

HelixVerdict run_check(const Scenario& sc, const ScenarioInstance& inst,
                       const std::string& name) {
    const double tol = check_tolerance(sc, name);
    const int samples = sc.samples;
    const auto& patch = *inst.patch;

    auto need_field = [&]() -> const ScalarField& {
        if (!inst.field) throw ValidationError("check '" + name + "' requires a field");
        return *inst.field;
    };
    auto need_curve = [&]() -> const ChartCurve& {
        if (!inst.curve) throw ValidationError("check '" + name + "' requires a curve");
        return *inst.curve;
    };
    auto need_direction = [&]() -> const Vec& {
        if (!inst.direction) throw ValidationError("check '" + name + "' requires a direction");
        return *inst.direction;
    };

    if (name == "eikonal") {
        return wrap_report("eikonal", eikonal_check(patch, need_field(), need_curve(), samples, tol));
    }
    if (name == "f_eikonal_curve") {
        return f_eikonal_curve_test(patch, need_field(), need_curve(), samples, tol);
    }
    if (name == "linearity") {
        return linearity_equivalence(patch, need_field(), need_curve(), samples, tol);
    }
    if (name == "lift") {
        return lift_helix_equivalence(patch, need_field(), need_curve(), samples, tol);
    }
    if (name == "general_helix") {
        Curve amb = need_curve().ambient();
        std::optional<Vec> axis = inst.direction;
        auto hv = wrap_report("general_helix", general_helix_test(amb, axis, samples, tol));
        hv.payload["cos_phi"] = std::cos(hv.report.mean_value);
        return hv;
    }
    if (name == "helix_angle") {
        return helix_angle(patch, need_direction(),
                           static_cast<int>(param(sc.patch_params, "grid", 5)), tol);
    }
    if (name == "axis_ratio") {
        return axis_and_ratio(patch, need_field(), need_curve(), samples, tol);
    }
    if (name == "parallel_gradient") {
        return wrap_report("parallel_gradient",
                           parallel_gradient_check(patch, need_field(), need_curve(), samples, tol));
    }
    if (name == "directional_derivative") {
        return wrap_report("directional_derivative",
                           directional_derivative_identity(patch, need_field(), need_curve(),
                                                           samples, tol));
    }
    if (name == "geodesic") {
        // Unit ambient speed along the integrated curve.
        const ChartCurve& cc = need_curve();
        Curve amb = cc.ambient();
        std::vector<double> speeds;
        for (double s : sample_params(cc, samples)) {
            speeds.push_back(differentiate(amb, s, 1).norm());
        }
        CheckReport rep;
        rep.tolerance = tol;
        rep.stats = constancy(speeds);
        rep.mean_value = rep.stats.mean;
        rep.verdict = (rep.stats.rel_dev <= tol && std::abs(rep.stats.mean - 1.0) <= tol)
                          ? Verdict::Pass : Verdict::Fail;
        rep.detail = "unit ambient speed along the geodesic";
        auto hv = wrap_report("geodesic", rep);
        hv.payload["speed_drift"] = rep.stats.max_abs_dev;
        return hv;
    }
    if (name == "system_residuals") {
        return system_residuals(patch, need_direction(), need_curve(), samples, tol);
    }
    if (name == "parallel_normal_chain") {
        return parallel_normal_chain(patch, need_field(), need_direction(), need_curve(),
                                     samples, tol);
    }
    throw ValidationError("unknown check name: " + name);
}

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "axis_ratio", "directional_derivative", "eikonal", "f_eikonal_curve", "general_helix",
        "geodesic", "helix_angle", "lift", "linearity", "parallel_gradient",
        "parallel_normal_chain", "system_residuals"};
    return names;
}

} // namespace

ScenarioInstance instantiate(const Scenario& sc) {
    std::vector<std::string> errors;
    if (sc.name.empty()) errors.push_back("scenario name is empty");
    if (sc.checks.empty()) errors.push_back("checks list is empty");
    if (sc.samples < 8) errors.push_back("samples must be >= 8");
    if (sc.ambient_dim < 2) errors.push_back("ambient_dim must be >= 2");
    for (const auto& c : sc.checks) {
        const auto& kn = known_checks();
        if (std::find(kn.begin(), kn.end(), c) == kn.end()) {
            errors.push_back("unknown check name: " + c);
        }
    }
    if (!errors.empty()) {
        std::string msg = "scenario validation failed:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ValidationError(msg);
    }

    ScenarioInstance inst;
    inst.patch = make_patch(sc);
    if (inst.patch->n() != sc.ambient_dim) {
        throw ValidationError("patch ambient dimension " + std::to_string(inst.patch->n())
                              + " does not match ambient_dim " + std::to_string(sc.ambient_dim));
    }
    inst.field = make_field(sc, inst.patch);
    if (sc.direction) {
        Vec d = *sc.direction;
        if (d.size() != sc.ambient_dim) throw ValidationError("direction has wrong dimension");
        const double n = d.norm();
        if (n <= 0) throw ValidationError("direction must be nonzero");
        inst.direction = d / n;
    }
    if (!sc.curve_kind.empty() && sc.curve_kind != "none") {
        inst.curve = make_curve(sc, inst);
    }
    return inst;
}

RunReport run_scenario(const Scenario& sc) {
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioInstance inst = instantiate(sc);

    RunReport rep;
    rep.scenario = sc.name;
    for (const auto& name : sc.checks) {
        HelixVerdict hv;
        try {
            hv = run_check(sc, inst, name);
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception& ex) {
            hv.kind = name;
            hv.report.verdict = Verdict::Inconclusive;
            hv.report.detail = std::string("error: ") + ex.what();
        }
        hv.kind = name; // reports key checks by their requested names
        rep.checks.push_back(std::move(hv));
    }

    // Sample table for CSV export.
    if (inst.curve) {
        const ChartCurve& cc = *inst.curve;
        Curve amb = cc.ambient();
        const int n = inst.patch->n();
        std::vector<std::string> qnames;
        const bool has_field = inst.field.has_value();
        if (has_field) {
            qnames = {"f", "grad_dot_T", "grad_norm", "speed"};
        } else {
            qnames = {"speed"};
        }
        for (int i = 0; i < n; ++i) qnames.push_back("x" + std::to_string(i));
        std::sort(qnames.begin(), qnames.end());
        rep.csv_columns.push_back("s");
        for (const auto& q : qnames) rep.csv_columns.push_back(q);

        std::mt19937_64 rng(sc.seed);
        std::uniform_real_distribution<double> jitter(0.0, 1.0);
        const double span = cc.s_max - cc.s_min;
        const double pad = 0.02 * span;
        for (int i = 0; i < sc.samples; ++i) {
            const double frac = (i + jitter(rng)) / sc.samples;
            const double s = cc.s_min + pad + (span - 2 * pad) * frac;
            Vec x = amb.at(s);
            std::map<std::string, double> q;
            q["speed"] = differentiate(amb, s, 1).norm();
            if (has_field) {
                q["f"] = inst.field->value(cc.u(s));
                Vec g = gradient(*inst.patch, *inst.field, cc.u(s));
                Vec t = differentiate(amb, s, 1);
                q["grad_norm"] = g.norm();
                q["grad_dot_T"] = g.dot(t / t.norm());
            }
            for (int d = 0; d < n; ++d) q["x" + std::to_string(d)] = x(d);
            std::vector<double> row;
            row.push_back(s);
            for (const auto& name : qnames) row.push_back(q[name]);
            rep.csv_rows.push_back(std::move(row));
        }
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- built-in catalog ----------------------------------------------------

Scenario builtin_scenario(const std::string& name) {
    Scenario sc;
    sc.name = name;
    sc.samples = 64;
    if (name == "example_3_1_gradient_tangent") {
        sc.ambient_dim = 3;
        sc.patch_kind = "identity";
        sc.field_kind = "linear";
        sc.field_coeffs = {0, 0, 1};
        sc.curve_kind = "vertical_line";
        sc.curve_params = {{"x0", 1.0}, {"y0", 0.0}, {"length", 10.0}};
        sc.checks = {"eikonal", "f_eikonal_curve", "directional_derivative"};
        return sc;
    }
    if (name == "example_3_2") {
        sc.ambient_dim = 3;
        sc.patch_kind = "identity";
        sc.field_kind = "paraboloid_height";
        sc.curve_kind = "helix";
        sc.curve_params = {{"radius", 1.0}, {"pitch", 1.0}, {"length", 10.0}};
        sc.checks = {"eikonal", "f_eikonal_curve", "linearity", "lift", "directional_derivative"};
        return sc;
    }
    if (name == "example_3_3_linear_field") {
        sc.ambient_dim = 3;
        sc.patch_kind = "identity";
        sc.field_kind = "linear";
        sc.field_coeffs = {0, 0, 1};
        sc.field_constant = 2.0;
        sc.curve_kind = "helix";
        sc.curve_params = {{"radius", 2.0}, {"pitch", 1.0}, {"length", 12.0}};
        sc.direction = make_vec({0, 0, 1});
        sc.checks = {"eikonal", "general_helix", "f_eikonal_curve", "linearity"};
        return sc;
    }
    if (name == "example_3_4_cylinder") {
        sc.ambient_dim = 3;
        sc.patch_kind = "cylinder";
        sc.field_kind = "chart_coordinate";
        sc.field_constant = 1; // f(x, t) = t
        sc.curve_kind = "geodesic";
        sc.curve_u0 = {0.0, 0.0};
        sc.curve_v0 = {1.0, 1.0}; // (c, a)/sqrt(c^2+a^2) with a = c = 1
        sc.curve_params = {{"length", 10.0}, {"step", 1e-3}};
        sc.checks = {"geodesic", "eikonal", "f_eikonal_curve", "linearity",
                     "directional_derivative"};
        return sc;
    }
    if (name == "thm_4_1_affine_r3") {
        sc.ambient_dim = 3;
        sc.patch_kind = "identity";
        sc.field_kind = "linear";
        sc.field_coeffs = {0, 0, 1};
        sc.curve_kind = "helix";
        sc.curve_params = {{"radius", 1.0}, {"pitch", 1.0}, {"length", 10.0}};
        sc.checks = {"parallel_gradient", "f_eikonal_curve", "axis_ratio"};
        return sc;
    }
    if (name == "lift_3_3") {
        sc = builtin_scenario("example_3_2");
        sc.name = name;
        sc.checks = {"eikonal", "f_eikonal_curve", "lift"};
        return sc;
    }
    if (name == "lemma_5_1_cylinder") {
        sc.ambient_dim = 3;
        sc.patch_kind = "cylinder";
        sc.field_kind = "chart_coordinate";
        sc.field_constant = 1;
        sc.direction = make_vec({0, 0, 1});
        sc.curve_kind = "helix_line";
        sc.curve_u0 = {0.0, 0.0};
        sc.curve_params = {{"length", 5.0}, {"step", 1e-3}};
        sc.checks = {"eikonal", "f_eikonal_curve", "parallel_normal_chain", "general_helix"};
        return sc;
    }
    throw ValidationError("unknown builtin scenario: " + name);
}

std::vector<std::pair<std::string, std::string>> catalog() {
    return {
        {"example_3_1_gradient_tangent", "gradient equal to the tangent: vertical line under a linear field"},
        {"example_3_2", "circular helix under f = x^2 + y^2 + z (||grad f|| = sqrt(5))"},
        {"example_3_3_linear_field", "generalized helix under a linear field with matching axis"},
        {"example_3_4_cylinder", "cylinder geodesic under the height field f(x, t) = t"},
        {"lemma_5_1_cylinder", "parallel-normal chain on a cylinder helix line"},
        {"lift_3_3", "graph lift of the circular helix and the lift-angle identity"},
        {"thm_4_1_affine_r3", "axis reconstruction and tau/kappa = cot(theta) for affine f = z"},
    };
}

// ---- scenario JSON -------------------------------------------------------

Scenario parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& ex) {
        throw ValidationError(std::string("scenario is not valid JSON: ") + ex.what());
    }
    std::vector<std::string> errors;
    Scenario sc;
    if (j.contains("builtin")) {
        sc = builtin_scenario(j.at("builtin").get<std::string>());
    }
    try {
        if (j.contains("name")) sc.name = j.at("name").get<std::string>();
        if (j.contains("ambient_dim")) sc.ambient_dim = j.at("ambient_dim").get<int>();
        if (j.contains("patch")) {
            const auto& p = j.at("patch");
            sc.patch_kind = p.value("kind", sc.patch_kind);
            for (auto it = p.begin(); it != p.end(); ++it) {
                if (it.key() != "kind" && it->is_number()) {
                    sc.patch_params[it.key()] = it->get<double>();
                }
            }
        }
        if (j.contains("field")) {
            const auto& f = j.at("field");
            sc.field_kind = f.value("kind", sc.field_kind);
            if (f.contains("coeffs")) sc.field_coeffs = f.at("coeffs").get<std::vector<double>>();
            if (f.contains("constant")) sc.field_constant = f.at("constant").get<double>();
        }
        if (j.contains("curve")) {
            const auto& c = j.at("curve");
            sc.curve_kind = c.value("kind", sc.curve_kind);
            if (c.contains("u0")) sc.curve_u0 = c.at("u0").get<std::vector<double>>();
            if (c.contains("v0")) sc.curve_v0 = c.at("v0").get<std::vector<double>>();
            for (auto it = c.begin(); it != c.end(); ++it) {
                if (it.key() != "kind" && it->is_number()) {
                    sc.curve_params[it.key()] = it->get<double>();
                }
            }
        }
        if (j.contains("direction")) {
            sc.direction = to_vec(j.at("direction").get<std::vector<double>>());
        }
        if (j.contains("checks")) sc.checks = j.at("checks").get<std::vector<std::string>>();
        if (j.contains("tolerances")) {
            for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it) {
                sc.tolerances[it.key()] = it->get<double>();
            }
        }
        if (j.contains("samples")) sc.samples = j.at("samples").get<int>();
        if (j.contains("seed")) sc.seed = j.at("seed").get<unsigned long long>();
    } catch (const json::exception& ex) {
        errors.push_back(ex.what());
    }
    if (!errors.empty()) {
        std::string msg = "scenario validation failed:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ValidationError(msg);
    }
    return sc;
}

// ---- report serialization ------------------------------------------------

namespace {

Verdict verdict_from_string(const std::string& s) {
    if (s == "PASS") return Verdict::Pass;
    if (s == "FAIL") return Verdict::Fail;
    if (s == "PREMISE-FAILED") return Verdict::PremiseFailed;
    if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
    if (s == "THEOREM-VIOLATION") return Verdict::TheoremViolation;
    throw ValidationError("unknown verdict: " + s);
}

} // namespace

std::string report_to_json(const RunReport& rep) {
    json j;
    j["scenario"] = rep.scenario;
    j["version"] = rep.version;
    j["timing"] = rep.wall_seconds;
    j["checks"] = json::array();
    for (const auto& hv : rep.checks) {
        json c;
        c["name"] = hv.kind;
        c["verdict"] = to_string(hv.report.verdict);
        c["detail"] = hv.report.detail;
        c["tolerance"] = hv.report.tolerance;
        c["payload"] = json::object();
        for (const auto& [k, v] : hv.payload) c["payload"][k] = v;
        c["residuals"] = {
            {"mean", hv.report.stats.mean},
            {"max_abs_dev", hv.report.stats.max_abs_dev},
            {"rel_dev", hv.report.stats.rel_dev},
            {"n_samples", hv.report.stats.n_samples},
        };
        j["checks"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& json_text) {
    json j = json::parse(json_text);
    RunReport rep;
    rep.scenario = j.at("scenario").get<std::string>();
    rep.version = j.at("version").get<std::string>();
    rep.wall_seconds = j.at("timing").get<double>();
    for (const auto& c : j.at("checks")) {
        HelixVerdict hv;
        hv.kind = c.at("name").get<std::string>();
        hv.report.verdict = verdict_from_string(c.at("verdict").get<std::string>());
        hv.report.detail = c.at("detail").get<std::string>();
        hv.report.tolerance = c.at("tolerance").get<double>();
        for (auto it = c.at("payload").begin(); it != c.at("payload").end(); ++it) {
            hv.payload[it.key()] = it->get<double>();
        }
        const auto& r = c.at("residuals");
        hv.report.stats.mean = r.at("mean").get<double>();
        hv.report.stats.max_abs_dev = r.at("max_abs_dev").get<double>();
        hv.report.stats.rel_dev = r.at("rel_dev").get<double>();
        hv.report.stats.n_samples = r.at("n_samples").get<int>();
        rep.checks.push_back(std::move(hv));
    }
    return rep;
}

std::string report_to_csv(const RunReport& rep) {
    std::string out;
    for (size_t i = 0; i < rep.csv_columns.size(); ++i) {
        if (i) out += ',';
        out += rep.csv_columns[i];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : rep.csv_rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

int exit_code(const RunReport& rep) {
    bool any_fail = false, any_violation = false;
    for (const auto& hv : rep.checks) {
        if (hv.report.verdict == Verdict::Fail) any_fail = true;
        if (hv.report.verdict == Verdict::TheoremViolation) any_violation = true;
    }
    if (any_violation) return 3;
    if (any_fail) return 2;
    return 0;
}

} // namespace helixlab
