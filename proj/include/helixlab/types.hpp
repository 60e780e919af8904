#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace helixlab {

// Ambient vectors live in R^n with n fixed per scenario (n >= 2).
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Evaluation left the curve/patch domain or came too close to a
// finite-difference stencil boundary.
class BoundaryError : public std::runtime_error {
public:
    explicit BoundaryError(const std::string& what) : std::runtime_error(what) {}
};

// A map produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// ||alpha'|| fell below the regularity floor.
class DegenerateCurveError : public std::runtime_error {
public:
    explicit DegenerateCurveError(const std::string& what) : std::runtime_error(what) {}
};

// Chart Jacobian lost rank or the induced metric is not SPD.
class SingularPatchError : public std::runtime_error {
public:
    explicit SingularPatchError(const std::string& what) : std::runtime_error(what) {}
};

// A curve expected to be unit-speed is not, beyond tolerance.
class ParametrizationError : public std::runtime_error {
public:
    explicit ParametrizationError(const std::string& what) : std::runtime_error(what) {}
};

// Helix angle hit 0 or pi/2 where an interior angle is required.
class DegenerateAngleError : public std::runtime_error {
public:
    explicit DegenerateAngleError(const std::string& what) : std::runtime_error(what) {}
};

// Too few samples for a statistic.
class InsufficientSamplesError : public std::runtime_error {
public:
    explicit InsufficientSamplesError(const std::string& what) : std::runtime_error(what) {}
};

// A geodesic/helix-line trajectory left the chart box.
class DomainExitError : public std::runtime_error {
public:
    double exit_parameter;
    DomainExitError(const std::string& what, double s)
        : std::runtime_error(what), exit_parameter(s) {}
};

// Fixed-step integrator drifted beyond its accuracy budget.
class IntegratorAccuracyError : public std::runtime_error {
public:
    explicit IntegratorAccuracyError(const std::string& what) : std::runtime_error(what) {}
};

// A lemma/theorem hypothesis stated by the scenario does not hold numerically.
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// No sample admitted a defined Frenet frame.
class InconclusiveError : public std::runtime_error {
public:
    explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace helixlab
