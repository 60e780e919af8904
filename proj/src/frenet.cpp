#include "helixlab/frenet.hpp"

#include <cmath>

namespace helixlab {

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::PremiseFailed: return "PREMISE-FAILED";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::TheoremViolation: return "THEOREM-VIOLATION";
    }
    return "?";
}

namespace {

Vec cross3(const Vec& a, const Vec& b) {
    Vec c(3);
    c << a(1) * b(2) - a(2) * b(1),
         a(2) * b(0) - a(0) * b(2),
         a(0) * b(1) - a(1) * b(0);
    return c;
}

} // namespace

FrenetData frenet_apparatus(const Curve& curve, double s,
                            double kappa_min, double unit_speed_tol) {
    Vec d1 = differentiate(curve, s, 1);
    const double speed = d1.norm();
    if (std::abs(speed - 1.0) > unit_speed_tol) {
        throw ParametrizationError("curve is not unit-speed at s=" + std::to_string(s)
                                   + " (||alpha'|| = " + std::to_string(speed) + ")");
    }

    FrenetData fr;
    fr.s = s;
    fr.T = d1;

    Vec d2 = differentiate(curve, s, 2);
    // Unit speed makes alpha'' orthogonal to T up to discretization noise;
    // remove the residual component before measuring kappa.
    Vec curv = d2 - d2.dot(fr.T) * fr.T;
    fr.kappa = curv.norm();
    if (fr.kappa < kappa_min) {
        return fr; // frame undefined beyond T
    }
    fr.N = curv / fr.kappa;

    Vec d3 = differentiate(curve, s, 3);
    const int n = curve.ambient_dim;
    if (n == 3) {
        fr.B = cross3(fr.T, fr.N);
        fr.tau = d3.dot(fr.B) / fr.kappa;
    } else {
        Vec rem = d3 - d3.dot(fr.T) * fr.T - d3.dot(fr.N) * fr.N;
        const double rn = rem.norm();
        if (rn < kappa_min) {
            // Curve stays in a 2-plane; torsion vanishes and no binormal
            // direction is distinguished.
            fr.tau = 0.0;
            fr.B = Vec::Zero(n);
            fr.frame_defined = true;
            return fr;
        }
        fr.B = rem / rn;
        fr.tau = d3.dot(fr.B) / fr.kappa;
    }
    fr.frame_defined = true;
    return fr;
}

CheckReport general_helix_test(const Curve& curve,
                               const std::optional<Vec>& axis,
                               int samples, double tol) {
    if (samples < 8) {
        throw InsufficientSamplesError("general_helix_test needs >= 8 samples");
    }
    // Margin keeps numeric stencils off the boundary.
    const double span = curve.s_max - curve.s_min;
    const double pad = curve.analytic() ? 0.0 : 0.02 * span;
    const double a = curve.s_min + pad;
    const double b = curve.s_max - pad;

    CheckReport rep;
    rep.tolerance = tol;
    std::vector<double> vals;
    vals.reserve(samples);

    if (axis) {
        Vec ax = *axis;
        const double an = ax.norm();
        if (an <= 0.0) throw std::invalid_argument("axis must be nonzero");
        ax /= an;
        for (int i = 0; i < samples; ++i) {
            const double s = a + (b - a) * i / (samples - 1.0);
            Vec t = differentiate(curve, s, 1);
            vals.push_back(t.dot(ax) / t.norm());
        }
        rep.stats = constancy(vals);
        rep.mean_value = std::acos(std::clamp(rep.stats.mean, -1.0, 1.0));
        rep.verdict = rep.stats.rel_dev <= tol ? Verdict::Pass : Verdict::Fail;
        rep.detail = "constancy of <T, axis>";
        return rep;
    }

    if (curve.ambient_dim != 3) {
        throw std::invalid_argument("axis-free general_helix_test requires R^3");
    }
    for (int i = 0; i < samples; ++i) {
        const double s = a + (b - a) * i / (samples - 1.0);
        FrenetData fr = frenet_apparatus(curve, s);
        if (!fr.frame_defined) continue;
        vals.push_back(fr.tau / fr.kappa);
    }
    if (vals.empty()) {
        throw InconclusiveError("all samples have an undefined Frenet frame");
    }
    if (vals.size() < 8) {
        // A straight segment can legitimately leave < 8 framed samples; the
        // Lancret ratio is vacuously constant there.
        rep.stats = ConstancyStats{};
        rep.stats.n_samples = static_cast<int>(vals.size());
        rep.verdict = Verdict::Inconclusive;
        rep.detail = "fewer than 8 framed samples";
        return rep;
    }
    rep.stats = constancy(vals);
    rep.mean_value = std::atan2(1.0, rep.stats.mean); // angle with cot = tau/kappa
    rep.verdict = rep.stats.rel_dev <= tol ? Verdict::Pass : Verdict::Fail;
    rep.detail = "constancy of tau/kappa (Lancret)";
    return rep;
}

} // namespace helixlab
