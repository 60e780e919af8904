#include "helixlab/lift.hpp"

#include <cmath>

namespace helixlab {

LiftedCurve lift_curve(const SurfacePatch& patch, const ScalarField& field,
                       const ChartCurve& chart_curve) {
    (void)patch;
    LiftedCurve lc;
    lc.base = chart_curve;
    lc.field = &field;

    Curve amb = chart_curve.ambient();
    const int n = amb.ambient_dim;
    auto uu = chart_curve.u_of_s;
    auto fval = field.chart_value;

    Curve beta;
    beta.ambient_dim = n + 1;
    beta.s_min = amb.s_min;
    beta.s_max = amb.s_max;
    beta.map = [amb, uu, fval, n](double s) -> Vec {
        Vec out(n + 1);
        out.head(n) = amb.at(s);
        out(n) = fval(uu(s));
        return out;
    };
    // The lift stays numeric even over an analytic base: the last component
    // mixes the field and the chart, and every consumer normalizes beta'.
    lc.curve = beta;
    return lc;
}

HelixVerdict lift_helix_equivalence(const SurfacePatch& patch, const ScalarField& field,
                                    const ChartCurve& chart_curve, int samples,
                                    double tol) {
    HelixVerdict hv;
    hv.kind = "lift_equivalence";

    HelixVerdict base = f_eikonal_curve_test(patch, field, chart_curve, samples, tol);
    if (base.report.verdict == Verdict::PremiseFailed) {
        hv.report = base.report;
        return hv;
    }
    const bool side_a = base.report.passed();

    LiftedCurve lc = lift_curve(patch, field, chart_curve);
    Vec axis = Vec::Zero(lc.curve.ambient_dim);
    axis(lc.curve.ambient_dim - 1) = 1.0;
    CheckReport gh = general_helix_test(lc.curve, axis, samples, tol);
    const bool side_b = gh.passed();

    const double dot = base.payload["grad_dot_T"];
    const double cos_expected = dot / std::sqrt(1.0 + dot * dot);

    hv.report.tolerance = tol;
    hv.report.stats = gh.stats;
    hv.report.mean_value = gh.stats.mean;
    hv.report.detail = "f-eikonal helix property of alpha vs general helix property of the lift";
    hv.payload["cos_theta_lift"] = gh.stats.mean;
    hv.payload["cos_theta_expected"] = cos_expected;
    hv.payload["angle_gap"] = std::abs(gh.stats.mean - cos_expected);
    hv.payload["helix_side"] = side_a ? 1.0 : 0.0;
    hv.payload["lift_side"] = side_b ? 1.0 : 0.0;
    hv.payload["degenerate"] = std::abs(dot) <= tol ? 1.0 : 0.0;
    hv.report.verdict = (side_a == side_b) ? Verdict::Pass : Verdict::TheoremViolation;
    return hv;
}

} // namespace helixlab
