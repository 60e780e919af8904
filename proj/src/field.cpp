#include "helixlab/field.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace helixlab {

double ScalarField::value(const Vec& u) const {
    double v = chart_value(u);
    if (!std::isfinite(v)) throw EvaluationError("field value is not finite");
    return v;
}

Vec ScalarField::partials(const SurfacePatch& patch, const Vec& u) const {
    if (chart_partials) return chart_partials(u);
    const int k = patch.k();
    Vec p(k);
    for (int i = 0; i < k; ++i) {
        const double h = fd_step(u(i));
        Vec up = u, um = u;
        up(i) += h;
        um(i) -= h;
        p(i) = (chart_value(up) - chart_value(um)) / (2.0 * h);
    }
    return p;
}

Vec gradient(const SurfacePatch& patch, const ScalarField& field, const Vec& u) {
    Mat J = patch.jacobian(u);
    Mat g = J.transpose() * J;
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) {
        throw SingularPatchError("induced metric is not positive definite");
    }
    return J * llt.solve(field.partials(patch, u));
}

std::vector<double> sample_params(const ChartCurve& curve, int samples) {
    if (samples < 8) throw InsufficientSamplesError("need >= 8 samples");
    const double span = curve.s_max - curve.s_min;
    const double pad = 0.02 * span;
    std::vector<double> out(samples);
    for (int i = 0; i < samples; ++i) {
        out[i] = curve.s_min + pad + (span - 2 * pad) * i / (samples - 1.0);
    }
    return out;
}

CheckReport eikonal_check(const SurfacePatch& patch, const ScalarField& field,
                          const ChartCurve& curve, int samples, double tol) {
    std::vector<double> norms;
    for (double s : sample_params(curve, samples)) {
        norms.push_back(gradient(patch, field, curve.u(s)).norm());
    }
    CheckReport rep;
    rep.tolerance = tol;
    rep.stats = constancy(norms);
    rep.mean_value = rep.stats.mean;
    rep.verdict = rep.stats.rel_dev <= tol ? Verdict::Pass : Verdict::Fail;
    rep.detail = "constancy of ||grad f|| along the curve";
    return rep;
}

CheckReport parallel_gradient_check(const SurfacePatch& patch, const ScalarField& field,
                                    const ChartCurve& curve, int samples, double tol) {
    auto grad_at = [&](double s) { return gradient(patch, field, curve.u(s)); };
    CheckReport rep;
    rep.tolerance = tol;
    double worst = 0.0;
    std::vector<double> residuals;
    for (double s : sample_params(curve, samples)) {
        const double h = fd_step(s);
        Vec dg = (grad_at(s + h) - grad_at(s - h)) / (2.0 * h);
        Vec tang = split(patch, curve.u(s), dg).tangential;
        residuals.push_back(tang.norm());
        worst = std::max(worst, tang.norm());
    }
    rep.stats = constancy(residuals, 1.0); // residuals are absolute, not relative
    rep.mean_value = worst;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    rep.detail = "max ||nabla_T grad f|| along the curve";
    return rep;
}

CheckReport directional_derivative_identity(const SurfacePatch& patch,
                                            const ScalarField& field,
                                            const ChartCurve& curve, int samples,
                                            double tol) {
    Curve amb = curve.ambient();
    auto f_along = [&](double s) { return field.value(curve.u(s)); };
    CheckReport rep;
    rep.tolerance = tol;
    double worst = 0.0;
    double mean_rhs = 0.0;
    auto params = sample_params(curve, samples);
    for (double s : params) {
        const double h = fd_step(s);
        const double lhs = (f_along(s + h) - f_along(s - h)) / (2.0 * h);
        Vec t = differentiate(amb, s, 1);
        const double rhs = gradient(patch, field, curve.u(s)).dot(t / t.norm());
        worst = std::max(worst, std::abs(lhs - rhs));
        mean_rhs += rhs;
    }
    rep.stats.n_samples = static_cast<int>(params.size());
    rep.stats.max_abs_dev = worst;
    rep.stats.mean = mean_rhs / params.size();
    rep.stats.rel_dev = worst;
    rep.mean_value = rep.stats.mean;
    rep.verdict = worst <= tol ? Verdict::Pass : Verdict::Fail;
    rep.detail = "max |d/ds(f o alpha) - <grad f, T>|";
    return rep;
}

} // namespace helixlab
