#pragma once

#include "helixlab/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace helixlab {

/// A smooth map from a parameter interval into R^n. Derivatives up to
/// order 3 are either supplied by the caller (analytic mode) or taken by
/// second-order central differences (numeric mode).
struct Curve {
    using MapFn = std::function<Vec(double)>;
    using DerivFn = std::function<Vec(double, int)>; // order in {1,2,3}

    MapFn map;
    DerivFn analytic_derivative; // empty => numeric mode
    double s_min = 0.0;
    double s_max = 1.0;
    int ambient_dim = 3;

    bool analytic() const { return static_cast<bool>(analytic_derivative); }

    Vec at(double s) const;
};

/// Central-difference step for the given parameter location.
/// h = cbrt(eps) * max(1, |s|).
double fd_step(double s);

/// order-th derivative of the curve at s. Numeric mode uses second-order
/// central stencils and needs a margin of 3h inside the domain.
Vec differentiate(const Curve& curve, double s, int order);

/// Constancy statistics behind every "= constant" verdict.
struct ConstancyStats {
    double mean = 0.0;
    double max_abs_dev = 0.0;
    double rel_dev = 0.0; // max_abs_dev / max(|mean|, floor)
    int n_samples = 0;
};

constexpr double kRelDevFloor = 1e-12;

/// Mean / deviation summary of a sample set. Requires >= 8 finite samples.
ConstancyStats constancy(const std::vector<double>& samples, double floor = kRelDevFloor);

/// Reparametrize a regular curve by arc length. Length is accumulated by
/// composite Gauss-Legendre quadrature over n_quad panels; the inverse
/// s -> t uses a monotone cubic Hermite table with exact nodal slopes
/// 1/||alpha'(t)||. The result has domain [0, L] and is unit-speed.
Curve arclength_reparametrize(const Curve& curve, int n_quad = 512);

} // namespace helixlab
