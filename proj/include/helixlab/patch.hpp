#pragma once

#include "helixlab/curve.hpp"
#include "helixlab/frenet.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace helixlab {

/// A chart map from a k-dimensional parameter box into R^n (k <= n).
/// First and second chart derivatives are analytic when supplied,
/// otherwise taken by central differences.
class SurfacePatch {
public:
    using ChartFn = std::function<Vec(const Vec&)>;                 // u -> R^n
    using JacobianFn = std::function<Mat(const Vec&)>;              // n x k
    using SecondDerivFn = std::function<Vec(const Vec&, int, int)>; // d^2 chart / du_i du_j

    SurfacePatch(int k, int n, ChartFn chart,
                 Vec box_lo, Vec box_hi,
                 JacobianFn jac = nullptr, SecondDerivFn hess = nullptr);

    int k() const { return k_; }
    int n() const { return n_; }
    const Vec& box_lo() const { return box_lo_; }
    const Vec& box_hi() const { return box_hi_; }
    bool analytic() const { return static_cast<bool>(jac_); }

    bool inside(const Vec& u, double pad = 0.0) const;

    Vec point(const Vec& u) const;
    /// Chart Jacobian; throws SingularPatchError if the smallest singular
    /// value drops below 1e-8.
    Mat jacobian(const Vec& u) const;
    Vec second_derivative(const Vec& u, int i, int j) const;

    /// Thin orthonormal tangent basis (n x k), sign-normalized so it varies
    /// continuously with u.
    Mat tangent_basis(const Vec& u) const;

private:
    int k_, n_;
    ChartFn chart_;
    Vec box_lo_, box_hi_;
    JacobianFn jac_;
    SecondDerivFn hess_;
};

/// Tangential/normal decomposition of an ambient vector (Gauss splitting).
struct SplitDerivative {
    Vec tangential;
    Vec normal;
};

SplitDerivative split(const SurfacePatch& patch, const Vec& u, const Vec& v);

/// Induced metric g_ij = <d_i chart, d_j chart>.
Mat metric(const SurfacePatch& patch, const Vec& u);

/// Christoffel symbols of the second kind; result[i](j, l) = Gamma^i_{jl}.
std::vector<Mat> christoffel(const SurfacePatch& patch, const Vec& u);

/// A curve given in chart coordinates on a patch. Optional analytic chart
/// derivatives (orders 1 and 2) sharpen the induced ambient derivatives.
struct ChartCurve {
    std::shared_ptr<const SurfacePatch> patch;
    std::function<Vec(double)> u_of_s;
    std::function<Vec(double)> du_of_s;  // optional
    std::function<Vec(double)> ddu_of_s; // optional
    std::optional<Curve> ambient_override; // for curves born as ambient Curves
    double s_min = 0.0;
    double s_max = 1.0;

    Vec u(double s) const { return u_of_s(s); }
    /// The ambient curve chart(u(s)) with derivatives by chain rule when
    /// both the patch and the chart curve are analytic.
    Curve ambient() const;
};

/// Geodesic from chart point u0 with unit chart velocity v0, integrated by
/// fixed-step RK4 over the requested arc length. The trajectory is stored
/// densely and interpolated by cubic Hermite; ambient speed is audited,
/// not renormalized.
ChartCurve geodesic(const std::shared_ptr<const SurfacePatch>& patch,
                    const Vec& u0, const Vec& v0,
                    double length, double step = 1e-3);

/// Intrinsic Frenet apparatus on a k=3 patch: nabla_T T is the tangential
/// part of alpha'', the binormal completes an orthonormal triple inside the
/// tangent space, and tau = <tangential part of N', B>.
FrenetData intrinsic_frenet(const ChartCurve& curve, double s,
                            double kappa_min = kKappaMin);

/// Integrate a unit tangent vector field given in ambient form along the
/// patch (used for helix lines). field(u) must be tangent at chart(u).
ChartCurve integrate_tangent_field(const std::shared_ptr<const SurfacePatch>& patch,
                                   const std::function<Vec(const Vec&)>& ambient_field,
                                   const Vec& u0, double length, double step = 1e-3);

} // namespace helixlab
