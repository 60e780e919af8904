#pragma once

#include "helixlab/field.hpp"
#include "helixlab/helix_checks.hpp"
#include "helixlab/lift.hpp"
#include "helixlab/patch.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace helixlab {

inline constexpr const char* kToolVersion = "0.1.0";

/// One self-contained verification scenario: a patch, optionally a field,
/// a curve and a direction, plus the list of checks to run.
struct Scenario {
    std::string name;
    int ambient_dim = 3;

    std::string patch_kind; // identity, cylinder, plane, tilted_plane, sphere,
                            // helicoid, cone, slab_r4, cyl3_r4
    std::map<std::string, double> patch_params;

    std::string field_kind; // none, linear, paraboloid_height, chart_coordinate, constant
    std::vector<double> field_coeffs;
    double field_constant = 0.0;

    std::string curve_kind; // helix, vertical_line, perturbed_helix, geodesic,
                            // helix_line, chart_line
    std::map<std::string, double> curve_params;
    std::vector<double> curve_u0;
    std::vector<double> curve_v0;

    std::optional<Vec> direction;

    std::vector<std::string> checks;
    std::map<std::string, double> tolerances;
    int samples = 64;
    unsigned long long seed = 0;
};

/// A scenario materialized into live geometry objects.
struct ScenarioInstance {
    std::shared_ptr<const SurfacePatch> patch;
    std::optional<ScalarField> field;
    std::optional<ChartCurve> curve;
    std::optional<Vec> direction;
};

struct RunReport {
    std::string scenario;
    std::string version = kToolVersion;
    std::vector<HelixVerdict> checks;
    double wall_seconds = 0.0;
    // Sample table for CSV export: column names (s first, quantities
    // alphabetical after it) and one row per sample.
    std::vector<std::string> csv_columns;
    std::vector<std::vector<double>> csv_rows;
};

/// Names of the built-in scenarios, sorted, with one-line descriptions.
std::vector<std::pair<std::string, std::string>> catalog();

/// Materialize a built-in scenario by name.
Scenario builtin_scenario(const std::string& name);

/// Parse a scenario from a JSON document. Collects every violation into
/// the thrown message.
Scenario parse_scenario(const std::string& json_text);

/// Validate and instantiate the scenario's geometry.
ScenarioInstance instantiate(const Scenario& sc);

/// Run every requested check in order. Premise failures and per-check
/// runtime errors never abort the run.
RunReport run_scenario(const Scenario& sc);

std::string report_to_json(const RunReport& rep);
RunReport report_from_json(const std::string& json_text);
std::string report_to_csv(const RunReport& rep);

/// CI exit code: 0 all-pass, 2 any FAIL, 3 any THEOREM-VIOLATION
/// (4, validation error, is decided by the caller).
int exit_code(const RunReport& rep);

/// Raised by parse/validation with the full list of violations.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace helixlab
