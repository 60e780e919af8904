#include "helixlab/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs) throw std::runtime_error("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(ifs), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream ofs(path, std::ios::binary | std::ios::trunc);
    ofs << data;
}

void print_report(const helixlab::RunReport& rep) {
    std::cout << "scenario: " << rep.scenario << " (v" << rep.version << ")\n";
    for (const auto& hv : rep.checks) {
        std::cout << "  " << hv.kind << ": " << helixlab::to_string(hv.report.verdict);
        if (!hv.report.detail.empty()) std::cout << "  [" << hv.report.detail << "]";
        std::cout << "\n";
        for (const auto& [k, v] : hv.payload) {
            std::cout << "      " << k << " = " << v << "\n";
        }
    }
}

int run_and_emit(const helixlab::Scenario& sc, const std::string& out_json,
                 const std::string& csv_dir) {
    helixlab::RunReport rep = helixlab::run_scenario(sc);
    print_report(rep);
    if (!out_json.empty()) write_file(out_json, helixlab::report_to_json(rep));
    if (!csv_dir.empty()) {
        std::filesystem::create_directories(csv_dir);
        write_file((std::filesystem::path(csv_dir) / (rep.scenario + ".csv")).string(),
                   helixlab::report_to_csv(rep));
    }
    return helixlab::exit_code(rep);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for eikonal fields and helix curves on embedded submanifolds"};
    app.require_subcommand(1);

    std::string scenario_file, out_json, csv_dir, builtin_name;
    std::vector<std::string> tol_overrides;

    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario-file", scenario_file)->required();
    run->add_option("--out", out_json, "write the JSON report here");
    run->add_option("--csv", csv_dir, "write the CSV sample table into this directory");
    run->add_option("--tol", tol_overrides, "tolerance override, name=value");

    auto* cat = app.add_subcommand("catalog", "list the built-in scenarios");

    auto* demo = app.add_subcommand("demo", "run a built-in scenario by name");
    demo->add_option("builtin-name", builtin_name)->required();
    demo->add_option("--out", out_json, "write the JSON report here");
    demo->add_option("--csv", csv_dir, "write the CSV sample table into this directory");
    demo->add_option("--tol", tol_overrides, "tolerance override, name=value");

    CLI11_PARSE(app, argc, argv);

    try {
        helixlab::Scenario sc;
        if (cat->parsed()) {
            for (const auto& [name, desc] : helixlab::catalog()) {
                std::cout << name << "  -  " << desc << "\n";
            }
            return 0;
        }
        if (run->parsed()) {
            sc = helixlab::parse_scenario(read_file(scenario_file));
        } else {
            sc = helixlab::builtin_scenario(builtin_name);
        }
        for (const auto& ov : tol_overrides) {
            const auto eq = ov.find('=');
            if (eq == std::string::npos) {
                throw helixlab::ValidationError("bad --tol override (expected name=value): " + ov);
            }
            sc.tolerances[ov.substr(0, eq)] = std::stod(ov.substr(eq + 1));
        }
        return run_and_emit(sc, out_json, csv_dir);
    } catch (const helixlab::ValidationError& ex) {
        std::cerr << "validation error: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    }
}
