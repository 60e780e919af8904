#include "helixlab/patch.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace helixlab {

namespace {

double fd_step2(double x) {
    // Optimal step for second-order central second differences.
    static const double h0 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
    return h0 * std::max(1.0, std::abs(x));
}

Vec cross3(const Vec& a, const Vec& b) {
    Vec c(3);
    c << a(1) * b(2) - a(2) * b(1),
         a(2) * b(0) - a(0) * b(2),
         a(0) * b(1) - a(1) * b(0);
    return c;
}

/// Uniform-node cubic Hermite interpolant for vector-valued trajectories.
struct VecHermite {
    double s0 = 0.0;
    double ds = 1.0;
    std::vector<Vec> value;
    std::vector<Vec> slope;

    Vec eval(double s) const {
        const int last = static_cast<int>(value.size()) - 1;
        double x = (s - s0) / ds;
        int i = std::clamp(static_cast<int>(std::floor(x)), 0, last - 1);
        x -= i;
        const double x2 = x * x, x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * value[i] + (x3 - 2 * x2 + x) * ds * slope[i]
             + (-2 * x3 + 3 * x2) * value[i + 1] + (x3 - x2) * ds * slope[i + 1];
    }
};

} // namespace

SurfacePatch::SurfacePatch(int k, int n, ChartFn chart, Vec box_lo, Vec box_hi,
                           JacobianFn jac, SecondDerivFn hess)
    : k_(k), n_(n), chart_(std::move(chart)),
      box_lo_(std::move(box_lo)), box_hi_(std::move(box_hi)),
      jac_(std::move(jac)), hess_(std::move(hess)) {
    if (k_ < 1 || k_ > n_) throw std::invalid_argument("patch requires 1 <= k <= n");
    if (box_lo_.size() != k_ || box_hi_.size() != k_) {
        throw std::invalid_argument("box bounds must have length k");
    }
}

bool SurfacePatch::inside(const Vec& u, double pad) const {
    for (int i = 0; i < k_; ++i) {
        if (u(i) < box_lo_(i) + pad || u(i) > box_hi_(i) - pad) return false;
    }
    return true;
}

Vec SurfacePatch::point(const Vec& u) const {
    Vec p = chart_(u);
    if (!p.allFinite()) throw EvaluationError("chart produced a non-finite point");
    return p;
}

Mat SurfacePatch::jacobian(const Vec& u) const {
    Mat J(n_, k_);
    if (jac_) {
        J = jac_(u);
    } else {
        for (int i = 0; i < k_; ++i) {
            const double h = fd_step(u(i));
            Vec up = u, um = u;
            up(i) += h;
            um(i) -= h;
            J.col(i) = (chart_(up) - chart_(um)) / (2.0 * h);
        }
    }
    Eigen::JacobiSVD<Mat> svd(J);
    if (svd.singularValues()(k_ - 1) <= 1e-8) {
        throw SingularPatchError("chart Jacobian is rank deficient");
    }
    return J;
}

Vec SurfacePatch::second_derivative(const Vec& u, int i, int j) const {
    if (hess_) return hess_(u, i, j);
    const double hi = fd_step2(u(i));
    if (i == j) {
        Vec up = u, um = u;
        up(i) += hi;
        um(i) -= hi;
        return (chart_(up) - 2.0 * chart_(u) + chart_(um)) / (hi * hi);
    }
    const double hj = fd_step2(u(j));
    Vec upp = u, upm = u, ump = u, umm = u;
    upp(i) += hi; upp(j) += hj;
    upm(i) += hi; upm(j) -= hj;
    ump(i) -= hi; ump(j) += hj;
    umm(i) -= hi; umm(j) -= hj;
    return (chart_(upp) - chart_(upm) - chart_(ump) + chart_(umm)) / (4.0 * hi * hj);
}

Mat SurfacePatch::tangent_basis(const Vec& u) const {
    Mat J = jacobian(u);
    Eigen::HouseholderQR<Mat> qr(J);
    Mat Q = qr.householderQ() * Mat::Identity(n_, k_);
    Mat R = qr.matrixQR().topRows(k_).triangularView<Eigen::Upper>();
    // Positive R diagonal makes Q continuous in u for full-rank smooth J.
    for (int i = 0; i < k_; ++i) {
        if (R(i, i) < 0.0) Q.col(i) = -Q.col(i);
    }
    return Q;
}

SplitDerivative split(const SurfacePatch& patch, const Vec& u, const Vec& v) {
    Mat Q = patch.tangent_basis(u);
    SplitDerivative out;
    out.tangential = Q * (Q.transpose() * v);
    out.normal = v - out.tangential;
    return out;
}

Mat metric(const SurfacePatch& patch, const Vec& u) {
    Mat J = patch.jacobian(u);
    return J.transpose() * J;
}

std::vector<Mat> christoffel(const SurfacePatch& patch, const Vec& u) {
    const int k = patch.k();
    Mat J = patch.jacobian(u);
    Mat g = J.transpose() * J;
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) {
        throw SingularPatchError("induced metric is not positive definite");
    }
    // Gamma^i_{jl} = g^{im} <X_{jl}, X_m>
    std::vector<Mat> gamma(k, Mat::Zero(k, k));
    for (int j = 0; j < k; ++j) {
        for (int l = j; l < k; ++l) {
            Vec xjl = patch.second_derivative(u, j, l);
            Vec coeff = llt.solve(J.transpose() * xjl);
            for (int i = 0; i < k; ++i) {
                gamma[i](j, l) = coeff(i);
                gamma[i](l, j) = coeff(i);
            }
        }
    }
    return gamma;
}

Curve ChartCurve::ambient() const {
    if (ambient_override) return *ambient_override;
    Curve c;
    c.ambient_dim = patch->n();
    c.s_min = s_min;
    c.s_max = s_max;
    auto p = patch;
    auto uu = u_of_s;
    c.map = [p, uu](double s) { return p->point(uu(s)); };
    if (patch->analytic() && du_of_s && ddu_of_s) {
        auto du = du_of_s;
        auto ddu = ddu_of_s;
        auto d2 = [p, uu, du, ddu](double s) -> Vec {
            Vec u = uu(s), v = du(s), a = ddu(s);
            Vec out = p->jacobian(u) * a;
            const int k = p->k();
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    out += p->second_derivative(u, i, j) * v(i) * v(j);
                }
            }
            return out;
        };
        c.analytic_derivative = [p, uu, du, d2](double s, int order) -> Vec {
            if (order == 1) return p->jacobian(uu(s)) * du(s);
            if (order == 2) return d2(s);
            const double h = fd_step(s);
            return (d2(s + h) - d2(s - h)) / (2.0 * h);
        };
    }
    return c;
}

ChartCurve geodesic(const std::shared_ptr<const SurfacePatch>& patch,
                    const Vec& u0, const Vec& v0, double length, double step) {
    if (step <= 0.0) throw std::invalid_argument("step must be positive");
    const int k = patch->k();
    Mat g0 = metric(*patch, u0);
    const double speed0 = std::sqrt(v0.dot(g0 * v0));
    if (std::abs(speed0 - 1.0) > 1e-8) {
        throw ParametrizationError("geodesic initial chart velocity must be unit: g(v0,v0)="
                                   + std::to_string(speed0 * speed0));
    }

    auto accel = [&patch, k](const Vec& u, const Vec& w) -> Vec {
        auto gamma = christoffel(*patch, u);
        Vec a(k);
        for (int i = 0; i < k; ++i) a(i) = -w.dot(gamma[i] * w);
        return a;
    };

    const int n_steps = std::max(1, static_cast<int>(std::ceil(length / step)));
    const double h = length / n_steps;

    auto utab = std::make_shared<VecHermite>();
    auto wtab = std::make_shared<VecHermite>();
    utab->s0 = wtab->s0 = 0.0;
    utab->ds = wtab->ds = h;
    utab->value.reserve(n_steps + 1);
    wtab->value.reserve(n_steps + 1);

    Vec u = u0, w = v0;
    double max_drift = 0.0;
    for (int i = 0; i <= n_steps; ++i) {
        if (!patch->inside(u)) {
            throw DomainExitError("geodesic left the chart box", i * h);
        }
        utab->value.push_back(u);
        utab->slope.push_back(w);
        Vec a = accel(u, w);
        wtab->value.push_back(w);
        wtab->slope.push_back(a);
        const double sp = std::sqrt(w.dot(metric(*patch, u) * w));
        max_drift = std::max(max_drift, std::abs(sp - 1.0));
        if (i == n_steps) break;
        // classical RK4 on (u, w)
        Vec k1u = w, k1w = a;
        Vec k2u = w + 0.5 * h * k1w, k2w = accel(u + 0.5 * h * k1u, w + 0.5 * h * k1w);
        Vec k3u = w + 0.5 * h * k2w, k3w = accel(u + 0.5 * h * k2u, w + 0.5 * h * k2w);
        Vec k4u = w + h * k3w, k4w = accel(u + h * k3u, w + h * k3w);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    }
    if (max_drift > 1e-4) {
        throw IntegratorAccuracyError("geodesic speed drift " + std::to_string(max_drift));
    }

    ChartCurve cc;
    cc.patch = patch;
    cc.s_min = 0.0;
    cc.s_max = length;
    cc.u_of_s = [utab](double s) { return utab->eval(s); };
    cc.du_of_s = [wtab](double s) { return wtab->eval(s); };
    auto pp = patch;
    cc.ddu_of_s = [pp, utab, wtab, k](double s) -> Vec {
        Vec u = utab->eval(s), w = wtab->eval(s);
        auto gamma = christoffel(*pp, u);
        Vec a(k);
        for (int i = 0; i < k; ++i) a(i) = -w.dot(gamma[i] * w);
        return a;
    };
    return cc;
}

ChartCurve integrate_tangent_field(const std::shared_ptr<const SurfacePatch>& patch,
                                   const std::function<Vec(const Vec&)>& ambient_field,
                                   const Vec& u0, double length, double step) {
    if (step <= 0.0) throw std::invalid_argument("step must be positive");
    auto velocity = [&patch, &ambient_field](const Vec& u) -> Vec {
        Vec f = ambient_field(u);
        Mat J = patch->jacobian(u);
        return J.householderQr().solve(f);
    };

    const int n_steps = std::max(1, static_cast<int>(std::ceil(length / step)));
    const double h = length / n_steps;
    auto utab = std::make_shared<VecHermite>();
    utab->s0 = 0.0;
    utab->ds = h;

    Vec u = u0;
    for (int i = 0; i <= n_steps; ++i) {
        if (!patch->inside(u)) {
            throw DomainExitError("helix line left the chart box", i * h);
        }
        Vec w = velocity(u);
        utab->value.push_back(u);
        utab->slope.push_back(w);
        if (i == n_steps) break;
        Vec k1 = w;
        Vec k2 = velocity(u + 0.5 * h * k1);
        Vec k3 = velocity(u + 0.5 * h * k2);
        Vec k4 = velocity(u + h * k3);
        u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    ChartCurve cc;
    cc.patch = patch;
    cc.s_min = 0.0;
    cc.s_max = length;
    cc.u_of_s = [utab](double s) { return utab->eval(s); };
    auto p = patch;
    auto vel = [p, ambient_field](const Vec& uu) -> Vec {
        Vec f = ambient_field(uu);
        Mat J = p->jacobian(uu);
        return J.householderQr().solve(f);
    };
    cc.du_of_s = [utab, vel](double s) { return vel(utab->eval(s)); };
    auto du = cc.du_of_s;
    cc.ddu_of_s = [du](double s) -> Vec {
        const double h2 = fd_step(s);
        return (du(s + h2) - du(s - h2)) / (2.0 * h2);
    };
    return cc;
}

FrenetData intrinsic_frenet(const ChartCurve& curve, double s, double kappa_min) {
    if (curve.patch->k() != 3) {
        throw std::invalid_argument("intrinsic_frenet requires a k=3 patch");
    }
    Curve amb = curve.ambient();

    auto frame_at = [&](double si) {
        struct Local { Vec T, N, B; double kappa; bool defined; };
        Vec d1 = differentiate(amb, si, 1);
        Local loc;
        loc.T = d1 / d1.norm();
        Mat Q = curve.patch->tangent_basis(curve.u(si));
        Vec d2 = differentiate(amb, si, 2);
        Vec cov = Q * (Q.transpose() * d2); // nabla_T T
        cov -= cov.dot(loc.T) * loc.T;
        loc.kappa = cov.norm();
        loc.defined = loc.kappa >= 1e-10;
        if (loc.defined) {
            loc.N = cov / loc.kappa;
            Vec a = Q.transpose() * loc.T;
            Vec b = Q.transpose() * loc.N;
            loc.B = Q * cross3(a, b);
        }
        return loc;
    };

    auto loc = frame_at(s);
    FrenetData fr;
    fr.s = s;
    fr.T = loc.T;
    fr.kappa = loc.kappa;
    if (fr.kappa < kappa_min) {
        return fr;
    }
    fr.N = loc.N;
    fr.B = loc.B;
    fr.frame_defined = true;

    // tau = <nabla_T N, B> by differencing the normal field.
    const double h = fd_step(s);
    auto np = frame_at(s + h);
    auto nm = frame_at(s - h);
    if (np.defined && nm.defined) {
        Vec dn = (np.N - nm.N) / (2.0 * h);
        Mat Q = curve.patch->tangent_basis(curve.u(s));
        Vec dn_tan = Q * (Q.transpose() * dn);
        fr.tau = dn_tan.dot(fr.B);
    }
    return fr;
}

} // namespace helixlab
