#include "helixlab/lift.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace helixlab;
using hl_test::helix_on_identity;
using hl_test::identity_r3;
using hl_test::v3;

namespace {

ScalarField paraboloid_field() {
    ScalarField f;
    f.chart_value = [](const Vec& u) { return u(0) * u(0) + u(1) * u(1) + u(2); };
    f.chart_partials = [](const Vec& u) { return v3(2 * u(0), 2 * u(1), 1); };
    return f;
}

} // namespace

TEST_CASE("lift_curve: graph values over the helix") {
    auto p = identity_r3();
    ScalarField f = paraboloid_field();
    ChartCurve cc = helix_on_identity();
    LiftedCurve lc = lift_curve(*p, f, cc);
    REQUIRE(lc.curve.ambient_dim == 4);
    for (double s : {0.5, 3.0, 8.0}) {
        Vec b = lc.curve.map(s);
        Vec a = cc.ambient().map(s);
        CHECK((b.head(3) - a).norm() <= 1e-12);
        // f on the helix: x^2 + y^2 + z = 1 + s/sqrt(2)
        CHECK(b(3) == doctest::Approx(1.0 + s / std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("lift_curve: speed squared is 1 + <grad f, T>^2") {
    auto p = identity_r3();
    LiftedCurve lc = lift_curve(*p, paraboloid_field(), helix_on_identity());
    for (double s : {1.0, 4.5, 9.0}) {
        const double speed = differentiate(lc.curve, s, 1).norm();
        CHECK(speed * speed == doctest::Approx(1.5).epsilon(1e-8));
    }
}

TEST_CASE("lift_curve: last derivative component equals the directional derivative") {
    auto p = identity_r3();
    ScalarField f = paraboloid_field();
    ChartCurve cc = helix_on_identity();
    LiftedCurve lc = lift_curve(*p, f, cc);
    for (double s : {1.0, 5.0, 8.5}) {
        Vec db = differentiate(lc.curve, s, 1);
        Vec g = gradient(*p, f, cc.u(s));
        Vec t = cc.ambient().analytic_derivative(s, 1);
        CHECK(db(3) == doctest::Approx(g.dot(t)).epsilon(1e-7));
        CHECK((db.head(3) - t).norm() <= 1e-8);
    }
}

TEST_CASE("lift_helix_equivalence: helix lifts to a general helix at 1/sqrt(3)") {
    auto p = identity_r3();
    HelixVerdict hv = lift_helix_equivalence(*p, paraboloid_field(), helix_on_identity(), 64);
    CHECK(hv.report.passed());
    CHECK(hv.payload["helix_side"] == 1.0);
    CHECK(hv.payload["lift_side"] == 1.0);
    CHECK(hv.payload["cos_theta_lift"] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-7));
    CHECK(hv.payload["angle_gap"] <= 1e-6);
}

TEST_CASE("lift_helix_equivalence: non-eikonal field is a premise failure") {
    auto p = identity_r3();
    ScalarField f;
    f.chart_value = [](const Vec& u) { return u(2) * u(2); };
    f.chart_partials = [](const Vec& u) { return v3(0, 0, 2 * u(2)); };
    HelixVerdict hv = lift_helix_equivalence(*p, f, helix_on_identity(), 64);
    CHECK(hv.report.verdict == Verdict::PremiseFailed);
}

TEST_CASE("lift_helix_equivalence: both sides false still agree") {
    auto p = identity_r3();
    ChartCurve cc = helix_on_identity();
    cc.u_of_s = [](double s) { return v3(std::cos(s), std::sin(s), 0.05 * s * s); };
    cc.du_of_s = nullptr;
    cc.ddu_of_s = nullptr;
    cc.s_min = 0.0;
    cc.s_max = 8.0;
    HelixVerdict hv = lift_helix_equivalence(*p, paraboloid_field(), cc, 64);
    CHECK(hv.report.passed());
    CHECK(hv.payload["helix_side"] == 0.0);
    CHECK(hv.payload["lift_side"] == 0.0);
}
