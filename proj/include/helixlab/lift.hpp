#pragma once

#include "helixlab/field.hpp"
#include "helixlab/helix_checks.hpp"

namespace helixlab {

/// The graph lift beta(s) = (alpha(s), f(alpha(s))) into R^(n+1).
struct LiftedCurve {
    ChartCurve base;
    const ScalarField* field = nullptr;
    Curve curve; // the map s -> R^(n+1)
};

LiftedCurve lift_curve(const SurfacePatch& patch, const ScalarField& field,
                       const ChartCurve& chart_curve);

/// Biconditional: f-eikonal helix property of alpha versus the general-helix
/// property of the lift beta with axis (0,...,0,1). The lift's tangent is
/// used as-is (no reparametrization); the angle comes from normalization.
/// The payload cross-checks cos(theta_lift) = <grad f, T>/sqrt(1 + <grad f, T>^2).
HelixVerdict lift_helix_equivalence(const SurfacePatch& patch, const ScalarField& field,
                                    const ChartCurve& chart_curve, int samples,
                                    double tol = kAnalyticTol);

} // namespace helixlab
