// Acceptance suite: one test case per criterion, each ending with a single
// printed pass/fail line so the run can be audited from the ctest log.
#include "helixlab/scenario.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <sys/wait.h>

using namespace helixlab;

namespace {

Vec v3(double x, double y, double z) {
    Vec v(3);
    v << x, y, z;
    return v;
}

Vec v2(double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
}

const HelixVerdict& find_check(const RunReport& rep, const std::string& name) {
    for (const auto& hv : rep.checks) {
        if (hv.kind == name) return hv;
    }
    REQUIRE_MESSAGE(false, "check not found: " << name);
    static HelixVerdict dummy;
    return dummy;
}

struct Outcome {
    bool ok = true;
    void require(bool cond, const char* what) {
        CHECK_MESSAGE(cond, what);
        ok = ok && cond;
    }
    void announce(int criterion, const char* title) const {
        std::cout << "[acceptance] criterion " << criterion << " (" << title << "): "
                  << (ok ? "PASS" : "FAIL") << std::endl;
    }
};

std::shared_ptr<const SurfacePatch> identity_r3(bool analytic) {
    if (analytic) {
        return std::make_shared<SurfacePatch>(
            3, 3, [](const Vec& u) { return u; },
            Vec::Constant(3, -50.0), Vec::Constant(3, 50.0),
            [](const Vec&) { return Mat(Mat::Identity(3, 3)); },
            [](const Vec&, int, int) { return Vec(Vec::Zero(3)); });
    }
    return std::make_shared<SurfacePatch>(3, 3, [](const Vec& u) { return u; },
                                          Vec::Constant(3, -50.0), Vec::Constant(3, 50.0));
}

ScalarField paraboloid_field(bool analytic) {
    ScalarField f;
    f.chart_value = [](const Vec& u) { return u(0) * u(0) + u(1) * u(1) + u(2); };
    if (analytic) {
        f.chart_partials = [](const Vec& u) { return v3(2 * u(0), 2 * u(1), 1); };
    }
    return f;
}

ChartCurve helix_chart(std::shared_ptr<const SurfacePatch> patch, double r, double c,
                       double length, bool analytic) {
    const double m = std::sqrt(r * r + c * c);
    ChartCurve cc;
    cc.patch = std::move(patch);
    cc.s_min = 0.0;
    cc.s_max = length;
    cc.u_of_s = [r, c, m](double s) {
        return v3(r * std::cos(s / m), r * std::sin(s / m), c * s / m);
    };
    if (analytic) {
        cc.du_of_s = [r, c, m](double s) {
            return v3(-r / m * std::sin(s / m), r / m * std::cos(s / m), c / m);
        };
        cc.ddu_of_s = [r, m](double s) {
            return v3(-r / (m * m) * std::cos(s / m), -r / (m * m) * std::sin(s / m), 0.0);
        };
    }
    return cc;
}

/// Non-helix perturbation of the circular helix, reparametrized to unit speed.
ChartCurve perturbed_chart(std::shared_ptr<const SurfacePatch> patch, double r, double c,
                           double perturb, double t_max) {
    Curve base;
    base.ambient_dim = 3;
    base.s_min = 0.0;
    base.s_max = t_max;
    base.map = [r, c, perturb](double t) {
        return v3(r * std::cos(t), r * std::sin(t), c * t + perturb * t * t);
    };
    base.analytic_derivative = [r, c, perturb](double t, int order) -> Vec {
        switch (order) {
        case 1: return v3(-r * std::sin(t), r * std::cos(t), c + 2 * perturb * t);
        case 2: return v3(-r * std::cos(t), -r * std::sin(t), 2 * perturb);
        default: return v3(r * std::sin(t), -r * std::cos(t), 0.0);
        }
    };
    Curve unit = arclength_reparametrize(base, 2048);
    ChartCurve cc;
    cc.patch = std::move(patch);
    cc.s_min = unit.s_min;
    cc.s_max = unit.s_max;
    cc.u_of_s = unit.map;
    cc.ambient_override = unit;
    return cc;
}

/// 5 helix + 5 perturbed scenarios used by the equivalence criteria.
std::vector<std::pair<ChartCurve, bool>> equivalence_family() {
    auto p = identity_r3(true);
    std::vector<std::pair<ChartCurve, bool>> fam;
    for (auto [r, c] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {0.5, 2.0}, {1.5, 1.5}, {3.0, 1.0}}) {
        fam.emplace_back(helix_chart(p, r, c, 10.0, true), true);
    }
    for (auto [r, e] : {std::pair{1.0, 0.05}, {1.0, 0.02}, {2.0, 0.04}, {0.8, 0.08}, {1.2, 0.03}}) {
        fam.emplace_back(perturbed_chart(p, r, 1.0, e, 8.0), false);
    }
    return fam;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    const char* cli = std::getenv("HELIXLAB_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "HELIXLAB_CLI is not set");
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    if (output) *output = out;
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream ifs(p, std::ios::binary);
    REQUIRE(ifs.good());
    return std::string(std::istreambuf_iterator<char>(ifs), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("criterion 1: gradient norm and tangent angle along the helix") {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep = run_scenario(builtin_scenario("example_3_2"));
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const auto& eik = find_check(rep, "eikonal");
    out.require(eik.report.passed(), "eikonal verdict");
    out.require(std::abs(eik.report.stats.mean - std::sqrt(5.0)) <= 1e-8, "||grad f|| mean = sqrt(5)");
    out.require(eik.report.stats.rel_dev <= 1e-8, "||grad f|| rel_dev <= 1e-8");

    const auto& fe = find_check(rep, "f_eikonal_curve");
    out.require(fe.report.passed(), "f_eikonal verdict");
    out.require(std::abs(fe.payload.at("grad_dot_T") - 1.0 / std::sqrt(2.0)) <= 1e-8,
                "<grad f, T> = 1/sqrt(2)");
    out.require(fe.report.stats.max_abs_dev <= 1e-8, "<grad f, T> max deviation <= 1e-8");

    // numeric mode: no analytic chart, field partials, or curve derivatives
    auto p = identity_r3(false);
    HelixVerdict num = f_eikonal_curve_test(*p, paraboloid_field(false),
                                            helix_chart(p, 1.0, 1.0, 10.0, false), 64, kNumericTol);
    out.require(num.report.passed(), "numeric-mode verdict");
    out.require(std::abs(num.payload.at("grad_dot_T") - 1.0 / std::sqrt(2.0)) <= 1e-4,
                "numeric-mode <grad f, T> within 1e-4");
    out.require(num.report.stats.max_abs_dev <= 1e-4, "numeric-mode deviation <= 1e-4");

    out.require(elapsed < 1.0, "runtime < 1 s");
    out.announce(1, "helix under f = x^2 + y^2 + z");
}

TEST_CASE("criterion 2: cylinder geodesic against the closed form") {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();

    auto cyl = std::make_shared<SurfacePatch>(
        2, 3, [](const Vec& u) { return v3(std::cos(u(0)), std::sin(u(0)), u(1)); },
        v2(-50, -50), v2(50, 50),
        [](const Vec& u) {
            Mat J(3, 2);
            J << -std::sin(u(0)), 0, std::cos(u(0)), 0, 0, 1;
            return J;
        },
        [](const Vec& u, int i, int j) {
            if (i == 0 && j == 0) return v3(-std::cos(u(0)), -std::sin(u(0)), 0);
            return Vec(Vec::Zero(3));
        });
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ChartCurve g = geodesic(cyl, v2(0, 0), v2(inv_sqrt2, inv_sqrt2), 10.0, 1e-3);
    Curve amb = g.ambient();
    double max_gap = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double s = 10.0 * i / 100.0;
        Vec expect = v3(std::cos(s * inv_sqrt2), std::sin(s * inv_sqrt2), s * inv_sqrt2);
        max_gap = std::max(max_gap, (amb.map(s) - expect).norm());
    }
    out.require(max_gap <= 1e-6, "pointwise gap <= 1e-6 over length 10");

    RunReport rep = run_scenario(builtin_scenario("example_3_4_cylinder"));
    const auto& geo = find_check(rep, "geodesic");
    out.require(geo.report.passed(), "unit-speed audit");
    const auto& lin = find_check(rep, "linearity");
    out.require(lin.report.passed(), "linearity verdict");
    out.require(std::abs(lin.payload.at("slope") - inv_sqrt2) <= 1e-6, "f o alpha slope = 1/sqrt(2)");

    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(elapsed < 5.0, "runtime < 5 s");
    out.announce(2, "cylinder geodesic reproduction");
}

TEST_CASE("criterion 3: affine field, ratio and axis reconstruction") {
    Outcome out;
    Scenario sc = builtin_scenario("thm_4_1_affine_r3");
    sc.samples = 20;
    RunReport rep = run_scenario(sc);
    const auto& ax = find_check(rep, "axis_ratio");
    out.require(ax.report.passed(), "axis_ratio verdict");
    out.require(std::abs(ax.payload.at("tau_over_kappa") - 1.0) <= 1e-6, "tau/kappa = 1");
    out.require(std::abs(ax.payload.at("cot_theta") - 1.0) <= 1e-6, "cot(theta) = 1");
    out.require(std::abs(ax.payload.at("ratio_gap")) <= 1e-6, "|tau/kappa - cot(theta)| <= 1e-6");
    out.require(ax.payload.at("max_grad_dot_N") <= 1e-8, "<grad f, N> <= 1e-8 at 20 samples");
    out.require(ax.payload.at("axis_residual") <= 1e-6, "axis reconstruction residual <= 1e-6");
    out.announce(3, "tau/kappa = cot(theta) for f = z");
}

TEST_CASE("criterion 4: lift equivalence over the helix/non-helix family") {
    Outcome out;
    auto p = identity_r3(true);
    ScalarField f = paraboloid_field(true);
    int idx = 0;
    for (auto& [curve, is_helix] : equivalence_family()) {
        HelixVerdict hv = lift_helix_equivalence(*p, f, curve, 64);
        CAPTURE(idx);
        out.require(hv.report.passed(), "sides agree");
        out.require((hv.payload.at("helix_side") == 1.0) == is_helix, "expected helix side");
        out.require(hv.payload.at("helix_side") == hv.payload.at("lift_side"), "equal sides");
        ++idx;
    }
    HelixVerdict ref = lift_helix_equivalence(*p, f, helix_chart(p, 1.0, 1.0, 10.0, true), 64);
    out.require(std::abs(ref.payload.at("cos_theta_lift") - 1.0 / std::sqrt(3.0)) <= 1e-8,
                "lift angle cos(theta) = 1/sqrt(3)");
    out.announce(4, "f-eikonal helix iff the lift is a general helix");
}

TEST_CASE("criterion 5: linearity equivalence over the same family") {
    Outcome out;
    auto p = identity_r3(true);
    ScalarField f = paraboloid_field(true);
    int idx = 0;
    for (auto& [curve, is_helix] : equivalence_family()) {
        HelixVerdict hv = linearity_equivalence(*p, f, curve, 64);
        CAPTURE(idx);
        out.require(hv.report.verdict != Verdict::TheoremViolation, "no THEOREM-VIOLATION");
        out.require(hv.report.passed(), "sides agree");
        out.require((hv.payload.at("helix_side") == 1.0) == is_helix, "expected helix side");
        out.require(hv.payload.at("helix_side") == hv.payload.at("linear_side"), "equal sides");
        ++idx;
    }
    out.announce(5, "angle constancy iff f o alpha is linear");
}

TEST_CASE("criterion 6: identity suite across the corpus") {
    Outcome out;
    auto p = identity_r3(true);
    ScalarField par = paraboloid_field(true);
    ScalarField lin;
    lin.chart_value = [](const Vec& u) { return u(2); };
    lin.chart_partials = [](const Vec&) { return v3(0, 0, 1); };

    // d/ds (f o alpha) = <grad f, T> on every (patch, field, curve) pair
    for (const ScalarField* f : {&par, &lin}) {
        ChartCurve helix = helix_chart(p, 1.0, 1.0, 10.0, true);
        CheckReport dd = directional_derivative_identity(*p, *f, helix, 48, 1e-6);
        out.require(dd.passed() && dd.stats.max_abs_dev <= 1e-6, "directional derivative residual");
    }
    {
        auto cyl = std::make_shared<SurfacePatch>(
            2, 3, [](const Vec& u) { return v3(std::cos(u(0)), std::sin(u(0)), u(1)); },
            v2(-50, -50), v2(50, 50),
            [](const Vec& u) {
                Mat J(3, 2);
                J << -std::sin(u(0)), 0, std::cos(u(0)), 0, 0, 1;
                return J;
            },
            [](const Vec& u, int i, int j) {
                if (i == 0 && j == 0) return v3(-std::cos(u(0)), -std::sin(u(0)), 0);
                return Vec(Vec::Zero(3));
            });
        ScalarField height;
        height.chart_value = [](const Vec& u) { return u(1); };
        height.chart_partials = [](const Vec&) { return v2(0, 1); };
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        ChartCurve g = geodesic(cyl, v2(0, 0), v2(inv_sqrt2, inv_sqrt2), 8.0);
        CheckReport dd = directional_derivative_identity(*cyl, height, g, 48, 1e-6);
        out.require(dd.passed() && dd.stats.max_abs_dev <= 1e-6,
                    "directional derivative residual on the cylinder");

        // split reconstruction exact
        double max_split = 0.0;
        for (double a : {-1.0, 0.4, 2.0}) {
            for (double b : {-2.0, 0.0, 3.0}) {
                Vec v = v3(a + b, 1 - a, a * b + 0.5);
                SplitDerivative sp = split(*cyl, v2(a, b), v);
                max_split = std::max(max_split, (sp.tangential + sp.normal - v).norm());
            }
        }
        out.require(max_split <= 1e-12, "split reconstruction exact");
    }

    // Frenet ODE residuals <= 1e-6 (analytic curves)
    double max_ode = 0.0;
    for (auto [r, c] : {std::pair{1.0, 1.0}, {2.0, 0.5}}) {
        ChartCurve cc = helix_chart(p, r, c, 10.0, true);
        Curve amb = cc.ambient();
        for (int i = 1; i <= 16; ++i) {
            const double s = 10.0 * i / 18.0;
            const double h = fd_step(s);
            FrenetData f0 = frenet_apparatus(amb, s);
            FrenetData fp = frenet_apparatus(amb, s + h);
            FrenetData fm = frenet_apparatus(amb, s - h);
            max_ode = std::max(max_ode, ((fp.T - fm.T) / (2 * h) - f0.kappa * f0.N).norm());
            max_ode = std::max(max_ode,
                               ((fp.N - fm.N) / (2 * h) + f0.kappa * f0.T - f0.tau * f0.B).norm());
            max_ode = std::max(max_ode, ((fp.B - fm.B) / (2 * h) + f0.tau * f0.N).norm());
        }
    }
    out.require(max_ode <= 1e-6, "Frenet ODE residuals <= 1e-6");

    // lift speed identity ||beta'||^2 = 1 + <grad f, T>^2
    {
        ChartCurve helix = helix_chart(p, 1.0, 1.0, 10.0, true);
        LiftedCurve lc = lift_curve(*p, par, helix);
        double max_gap = 0.0;
        for (int i = 1; i < 20; ++i) {
            const double s = 10.0 * i / 20.0;
            const double sp = differentiate(lc.curve, s, 1).norm();
            const double dot = gradient(*p, par, helix.u(s))
                                   .dot(helix.ambient().analytic_derivative(s, 1));
            max_gap = std::max(max_gap, std::abs(sp * sp - (1.0 + dot * dot)));
        }
        out.require(max_gap <= 1e-8, "lift speed identity <= 1e-8");
    }
    out.announce(6, "identity suite");
}

TEST_CASE("criterion 7: numeric derivatives converge at order >= 2") {
    Outcome out;
    std::vector<Curve> curves;
    {
        Curve a;
        a.ambient_dim = 3;
        a.s_min = -10;
        a.s_max = 10;
        a.map = [](double t) { return v3(std::cos(t), std::sin(t), t); };
        a.analytic_derivative = [](double t, int order) -> Vec {
            switch (order) {
            case 1: return v3(-std::sin(t), std::cos(t), 1);
            case 2: return v3(-std::cos(t), -std::sin(t), 0);
            default: return v3(std::sin(t), -std::cos(t), 0);
            }
        };
        curves.push_back(a);
        Curve b = a;
        b.map = [](double t) { return v3(std::exp(0.2 * t), std::sin(2 * t), t * t); };
        b.analytic_derivative = [](double t, int order) -> Vec {
            switch (order) {
            case 1: return v3(0.2 * std::exp(0.2 * t), 2 * std::cos(2 * t), 2 * t);
            case 2: return v3(0.04 * std::exp(0.2 * t), -4 * std::sin(2 * t), 2);
            default: return v3(0.008 * std::exp(0.2 * t), -8 * std::cos(2 * t), 0);
            }
        };
        curves.push_back(b);
        Curve c = a;
        c.map = [](double t) { return v3(std::tanh(t), std::cos(3 * t), std::log(t + 20)); };
        c.analytic_derivative = [](double t, int order) -> Vec {
            const double sech2 = 1.0 / (std::cosh(t) * std::cosh(t));
            switch (order) {
            case 1: return v3(sech2, -3 * std::sin(3 * t), 1.0 / (t + 20));
            case 2:
                return v3(-2 * std::tanh(t) * sech2, -9 * std::cos(3 * t),
                          -1.0 / ((t + 20) * (t + 20)));
            default:
                return v3((4 * std::tanh(t) * std::tanh(t) - 2 * sech2) * sech2,
                          27 * std::sin(3 * t), 2.0 / ((t + 20) * (t + 20) * (t + 20)));
            }
        };
        curves.push_back(c);
    }
    for (const auto& cu : curves) {
        for (int order : {1, 2}) {
            for (double s : {-3.0, 0.5, 4.0}) {
                auto err = [&](double h) {
                    Vec approx = order == 1
                        ? Vec((cu.map(s + h) - cu.map(s - h)) / (2 * h))
                        : Vec((cu.map(s + h) - 2 * cu.map(s) + cu.map(s - h)) / (h * h));
                    return (approx - cu.analytic_derivative(s, order)).norm();
                };
                const double ratio = err(1e-3) / err(5e-4);
                CAPTURE(order);
                CAPTURE(s);
                out.require(ratio >= 3.5, "h-halving error ratio >= 3.5");
            }
        }
    }
    out.announce(7, "order >= 2 convergence on three smooth curves");
}

TEST_CASE("criterion 8: determinism, exit codes, report round trip") {
    Outcome out;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "helixlab_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // byte-identical CSV across two runs of the same scenario + seed
    out.require(run_cli("demo example_3_2 --csv " + (dir / "a").string()) == 0, "demo exit 0");
    out.require(run_cli("demo example_3_2 --csv " + (dir / "b").string()) == 0, "demo exit 0 again");
    out.require(slurp(dir / "a" / "example_3_2.csv") == slurp(dir / "b" / "example_3_2.csv"),
                "byte-identical CSV");

    // exit 2: a FAIL verdict (perturbed non-helix under the same field)
    {
        std::ofstream ofs(dir / "fail.json");
        ofs << R"({"builtin": "example_3_2", "name": "perturbed",
                   "curve": {"kind": "perturbed_helix", "perturb": 0.05, "t_max": 8.0},
                   "checks": ["eikonal", "f_eikonal_curve"]})";
    }
    out.require(run_cli("run " + (dir / "fail.json").string()) == 2, "exit 2 on FAIL");

    // exit 3: tolerances that accept the angle constancy but reject the fit
    {
        std::ofstream ofs(dir / "violation.json");
        ofs << R"({"builtin": "example_3_2", "name": "forced_violation",
                   "curve": {"kind": "perturbed_helix", "perturb": 0.05, "t_max": 8.0},
                   "checks": ["linearity"],
                   "tolerances": {"linearity": 0.04}})";
    }
    out.require(run_cli("run " + (dir / "violation.json").string()) == 3,
                "exit 3 on THEOREM-VIOLATION");

    // exit 4: validation errors
    out.require(run_cli("demo no_such_builtin") == 4, "exit 4 on unknown builtin");
    {
        std::ofstream ofs(dir / "bad.json");
        ofs << "{not json";
    }
    out.require(run_cli("run " + (dir / "bad.json").string()) == 4, "exit 4 on bad JSON");

    // report round trip
    Scenario sc = builtin_scenario("example_3_2");
    sc.seed = 11;
    RunReport rep = run_scenario(sc);
    RunReport back = report_from_json(report_to_json(rep));
    bool same = back.scenario == rep.scenario && back.checks.size() == rep.checks.size();
    for (size_t i = 0; same && i < rep.checks.size(); ++i) {
        same = back.checks[i].kind == rep.checks[i].kind
            && back.checks[i].report.verdict == rep.checks[i].report.verdict
            && back.checks[i].payload == rep.checks[i].payload
            && back.checks[i].report.stats.mean == rep.checks[i].report.stats.mean
            && back.checks[i].report.stats.rel_dev == rep.checks[i].report.stats.rel_dev;
    }
    out.require(same, "lossless report round trip");
    out.announce(8, "determinism and format");
}
