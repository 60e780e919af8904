#pragma once

#include "helixlab/curve.hpp"

#include <map>
#include <string>

namespace helixlab {

/// Outcome taxonomy shared by every check. PREMISE_FAILED means a
/// hypothesis of the statement under test does not hold on this data, so
/// the conclusion was not judged. THEOREM_VIOLATION flags a one-sided
/// disagreement in a biconditional check.
enum class Verdict {
    Pass,
    Fail,
    PremiseFailed,
    Inconclusive,
    TheoremViolation,
};

const char* to_string(Verdict v);

/// Result of one definition/theorem check at one tolerance.
struct CheckReport {
    Verdict verdict = Verdict::Inconclusive;
    ConstancyStats stats;
    double tolerance = 0.0;
    double mean_value = 0.0; // headline quantity (mean norm, mean angle, ...)
    std::string detail;

    bool passed() const { return verdict == Verdict::Pass; }
};

/// A named helix verdict with its numeric payload, as surfaced in reports.
struct HelixVerdict {
    std::string kind;
    CheckReport report;
    std::map<std::string, double> payload;
};

} // namespace helixlab
