#include "helixlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace helixlab {

namespace {

void require_finite(const Vec& v, double s) {
    if (!v.allFinite()) {
        throw EvaluationError("curve evaluation produced a non-finite value at s=" + std::to_string(s));
    }
}

} // namespace

Vec Curve::at(double s) const {
    Vec v = map(s);
    require_finite(v, s);
    return v;
}

double fd_step(double s) {
    static const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    return h0 * std::max(1.0, std::abs(s));
}

Vec differentiate(const Curve& curve, double s, int order) {
    if (order < 1 || order > 3) {
        throw std::invalid_argument("derivative order must be 1, 2 or 3");
    }
    if (curve.analytic()) {
        Vec v = curve.analytic_derivative(s, order);
        require_finite(v, s);
        return v;
    }
    const double h = fd_step(s);
    const double margin = 3.0 * h;
    if (s - curve.s_min < margin || curve.s_max - s < margin) {
        throw BoundaryError("s=" + std::to_string(s) + " too close to the domain boundary for the stencil");
    }
    switch (order) {
    case 1:
        return (curve.at(s + h) - curve.at(s - h)) / (2.0 * h);
    case 2:
        return (curve.at(s + h) - 2.0 * curve.at(s) + curve.at(s - h)) / (h * h);
    default: // 3
        return (curve.at(s + 2.0 * h) - 2.0 * curve.at(s + h)
                + 2.0 * curve.at(s - h) - curve.at(s - 2.0 * h)) / (2.0 * h * h * h);
    }
}

ConstancyStats constancy(const std::vector<double>& samples, double floor) {
    if (samples.size() < 8) {
        throw InsufficientSamplesError("constancy needs >= 8 samples, got " + std::to_string(samples.size()));
    }
    for (double x : samples) {
        if (!std::isfinite(x)) {
            throw EvaluationError("constancy sample is not finite");
        }
    }
    ConstancyStats st;
    st.n_samples = static_cast<int>(samples.size());
    double sum = 0.0;
    for (double x : samples) sum += x;
    st.mean = sum / st.n_samples;
    for (double x : samples) st.max_abs_dev = std::max(st.max_abs_dev, std::abs(x - st.mean));
    st.rel_dev = st.max_abs_dev / std::max(std::abs(st.mean), floor);
    return st;
}

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kGLNode[5] = {
    -0.906179845938663993, -0.538469310105683091, 0.0,
    0.538469310105683091, 0.906179845938663993};
constexpr double kGLWeight[5] = {
    0.236926885056189088, 0.478628670499366468, 0.568888888888888889,
    0.478628670499366468, 0.236926885056189088};

struct HermiteTable {
    std::vector<double> s;     // cumulative length (strictly increasing)
    std::vector<double> t;     // original parameter
    std::vector<double> dt_ds; // exact slope 1/||alpha'(t)||

    double eval(double si) const {
        si = std::clamp(si, s.front(), s.back());
        auto it = std::upper_bound(s.begin(), s.end(), si);
        size_t i = std::min<size_t>(std::max<ptrdiff_t>(1, it - s.begin()), s.size() - 1) - 1;
        const double h = s[i + 1] - s[i];
        const double x = (si - s[i]) / h;
        const double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * t[i] + (x3 - 2 * x2 + x) * h * dt_ds[i]
             + (-2 * x3 + 3 * x2) * t[i + 1] + (x3 - x2) * h * dt_ds[i + 1];
    }
};

} // namespace

Curve arclength_reparametrize(const Curve& curve, int n_quad) {
    if (n_quad < 1) throw std::invalid_argument("n_quad must be positive");

    auto speed = [&curve](double t) {
        double v = differentiate(curve, t, 1).norm();
        if (v < 1e-9) {
            throw DegenerateCurveError("||alpha'|| below 1e-9 at t=" + std::to_string(t));
        }
        return v;
    };

    // Shrink the working interval just enough for numeric-mode stencils.
    double t_lo = curve.s_min;
    double t_hi = curve.s_max;
    if (!curve.analytic()) {
        const double m = 3.5 * fd_step(std::max(std::abs(t_lo), std::abs(t_hi)));
        t_lo += m;
        t_hi -= m;
    }

    auto table = std::make_shared<HermiteTable>();
    table->s.resize(n_quad + 1);
    table->t.resize(n_quad + 1);
    table->dt_ds.resize(n_quad + 1);
    const double dt = (t_hi - t_lo) / n_quad;
    double acc = 0.0;
    table->s[0] = 0.0;
    table->t[0] = t_lo;
    table->dt_ds[0] = 1.0 / speed(t_lo);
    for (int i = 0; i < n_quad; ++i) {
        const double a = t_lo + i * dt;
        const double mid = a + 0.5 * dt;
        double panel = 0.0;
        for (int q = 0; q < 5; ++q) {
            panel += kGLWeight[q] * speed(mid + 0.5 * dt * kGLNode[q]);
        }
        acc += 0.5 * dt * panel;
        table->s[i + 1] = acc;
        table->t[i + 1] = a + dt;
        table->dt_ds[i + 1] = 1.0 / speed(a + dt);
    }

    Curve out;
    out.ambient_dim = curve.ambient_dim;
    out.s_min = 0.0;
    out.s_max = acc;
    Curve base = curve;
    out.map = [base, table](double s) { return base.at(table->eval(s)); };
    if (curve.analytic()) {
        // Chain rule through t(s); dt/ds from the Hermite table is accurate
        // enough only for order 1, so orders 2 and 3 difference the exact
        // first derivative alpha'(t(s)) / ||alpha'(t(s))||.
        auto d1 = [base, table](double s) -> Vec {
            Vec v = base.analytic_derivative(table->eval(s), 1);
            return v / v.norm();
        };
        out.analytic_derivative = [d1](double s, int order) -> Vec {
            if (order == 1) return d1(s);
            const double h = fd_step(s);
            if (order == 2) return (d1(s + h) - d1(s - h)) / (2.0 * h);
            return (d1(s + h) - 2.0 * d1(s) + d1(s - h)) / (h * h);
        };
    }
    return out;
}

} // namespace helixlab
