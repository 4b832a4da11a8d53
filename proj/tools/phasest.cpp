// phasest command line front end.
//
// Subcommands: score, certify, simulate, circuit. Each reads a JSON problem
// spec, runs the corresponding construction and writes a JSON report to
// stdout or --out. Exit codes: 0 success (and expected verdict), 2 spec
// parse error, 3 validation error, 4 certification verdict mismatch.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "phasest/report.hpp"

namespace {

void write_report(const phasest::ojson& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        throw phasest::error("cannot open output file: " + out_path);
    }
    out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"square-root-measurement toolkit for single-parameter phase estimation"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::string strategy = "plain";
    int grid = 0;
    int circuit_copies = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "problem spec file (JSON)")->required();
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
        cmd->add_option("--grid", grid, "theta quadrature gridpoints (default: auto)");
    };

    CLI::App* score = app.add_subcommand(
        "score", "closed-form maximum average score with a quadrature cross-check");
    add_common(score);

    CLI::App* certify = app.add_subcommand(
        "certify", "certify the global optimality conditions of a strategy");
    add_common(certify);
    certify->add_option("--strategy", strategy, "plain | reciprocal")
        ->check(CLI::IsMember({"plain", "reciprocal"}));

    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo run of the full estimation protocol");
    add_common(simulate);

    CLI::App* circuit = app.add_subcommand(
        "circuit", "gate-level pipeline check against the abstract strategy");
    add_common(circuit);
    circuit->add_option("--n", circuit_copies, "copy count for the circuit (2, 3 or 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const phasest::problem_spec input = phasest::load_problem_spec(spec_path);
        if (score->parsed()) {
            write_report(phasest::score_report(input, grid), out_path);
        } else if (certify->parsed()) {
            const phasest::ojson doc = phasest::certify_report(input, strategy, grid);
            write_report(doc, out_path);
            if (!doc["certification"]["verdict_matches"].get<bool>()) {
                return 4;
            }
        } else if (simulate->parsed()) {
            write_report(phasest::simulate_report(input), out_path);
        } else if (circuit->parsed()) {
            write_report(phasest::circuit_report(input, circuit_copies, grid), out_path);
        }
    } catch (const phasest::spec_format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const phasest::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
