#pragma once

#include "helixlab/curve.hpp"
#include "helixlab/report.hpp"

#include <optional>

namespace helixlab {

constexpr double kKappaMin = 1e-8;

/// Frenet apparatus at one parameter value. When kappa < kappa_min the
/// frame beyond T is undefined: N, B, tau carry no meaning and
/// frame_defined is false.
struct FrenetData {
    double s = 0.0;
    Vec T;
    Vec N;
    Vec B;
    double kappa = 0.0;
    double tau = 0.0;
    bool frame_defined = false;
};

/// Extrinsic Frenet apparatus of a unit-speed curve. In R^3 the frame is
/// oriented (B = T x N, signed tau); in R^n the first three frame vectors
/// come from Gram-Schmidt on alpha', alpha'', alpha'''.
FrenetData frenet_apparatus(const Curve& curve, double s,
                            double kappa_min = kKappaMin,
                            double unit_speed_tol = 1e-3);

/// General-helix test (constant angle between the tangent and a fixed
/// direction). With an axis: constancy of <T_hat, axis_hat> where T_hat is
/// the normalized first derivative (the curve need not be unit-speed).
/// Without an axis (R^3 only): Lancret criterion, constancy of tau/kappa
/// over samples with a defined frame.
CheckReport general_helix_test(const Curve& curve,
                               const std::optional<Vec>& axis,
                               int samples,
                               double tol = 1e-6);

} // namespace helixlab
