#pragma once

#include "helixlab/patch.hpp"
#include "helixlab/report.hpp"

#include <functional>

namespace helixlab {

/// A real function on a patch, given in chart coordinates. Partials are
/// analytic when supplied. An ambient extension (gradient on all of R^n)
/// is optional and only used for consistency checks and axes.
struct ScalarField {
    std::function<double(const Vec&)> chart_value;    // u -> R
    std::function<Vec(const Vec&)> chart_partials;    // u -> df/du (k), optional
    std::function<Vec(const Vec&)> ambient_gradient;  // x -> grad (n), optional

    double value(const Vec& u) const;
    Vec partials(const SurfacePatch& patch, const Vec& u) const;
};

constexpr double kAnalyticTol = 1e-6;
constexpr double kNumericTol = 1e-3;

/// Intrinsic gradient at u: the tangent vector with <grad, J e_i> = df/du_i,
/// i.e. J g^{-1} (df/du).
Vec gradient(const SurfacePatch& patch, const ScalarField& field, const Vec& u);

/// Constancy of ||grad f|| sampled along the curve (eikonal property).
CheckReport eikonal_check(const SurfacePatch& patch, const ScalarField& field,
                          const ChartCurve& curve, int samples,
                          double tol = kAnalyticTol);

/// ||nabla_T grad f|| == 0 along the curve (parallel gradient / affine f).
CheckReport parallel_gradient_check(const SurfacePatch& patch, const ScalarField& field,
                                    const ChartCurve& curve, int samples,
                                    double tol = kAnalyticTol);

/// d/ds (f o alpha) == <grad f, T>; an identity for unit-speed curves,
/// so a failure indicates discretization error, not a property of the data.
CheckReport directional_derivative_identity(const SurfacePatch& patch,
                                            const ScalarField& field,
                                            const ChartCurve& curve, int samples,
                                            double tol = kAnalyticTol);

/// Evenly spaced sample parameters with a small interior margin.
std::vector<double> sample_params(const ChartCurve& curve, int samples);

} // namespace helixlab
