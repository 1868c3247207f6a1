// Command-line harness: generate or load an instance, dispatch a solve
// method, and emit one CSV row per replication.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ppsc/experiment.hpp"

namespace {

bool parse_generate_spec(const std::string& text, ppsc::RunConfig& config) {
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ',')) parts.push_back(part);
    if (parts.size() != 4) return false;
    try {
        config.gen_v = std::stoi(parts[0]);
        config.gen_bbar = std::stod(parts[1]);
        config.gen_epsilon = std::stod(parts[2]);
        config.gen_seed = std::stoull(parts[3]);
    } catch (const std::exception&) {
        return false;
    }
    config.generate = true;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chance-constrained partial set covering solver suite"};

    ppsc::RunConfig config;
    std::string generate_spec;
    std::string model_tag = "ic";
    std::string out_path;

    auto* instance_opt =
        app.add_option("--instance", config.instance_path, "Instance JSON file");
    auto* generate_opt = app.add_option(
        "--generate", generate_spec, "Generate a benchmark instance: v,bbar,epsilon,seed");
    instance_opt->excludes(generate_opt);
    generate_opt->excludes(instance_opt);
    app.add_option("--model", model_tag, "Coverage model for --generate: ic or lt")
        ->check(CLI::IsMember({"ic", "lt"}));
    app.add_option("--method", config.method,
                   "Solve method: exact|benders-sub|benders-nv|dep|dep-lt|ltmip")
        ->required()
        ->check(CLI::IsMember(
            {"exact", "benders-sub", "benders-nv", "dep", "dep-lt", "ltmip"}));
    app.add_option("--kappa", config.kappa, "Strengthened-cut probe depth (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    app.add_option("--omega", config.omega, "Scenario count for sampling methods");
    app.add_option("--reps", config.reps, "Replications of the scenario set");
    app.add_option("--scenario-seed", config.scenario_seed, "Base scenario seed");
    app.add_option("--time-limit", config.time_limit_s, "Time limit per solve, seconds");
    app.add_option("--node-limit", config.node_limit, "Branch-and-bound node limit");
    app.add_option("--save-scenarios", config.save_scenarios_path,
                   "Write the first replication's scenario set to this path");
    app.add_option("--load-scenarios", config.load_scenarios_path,
                   "Read the scenario set from this path instead of sampling");
    app.add_option("--out", out_path, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (!generate_spec.empty() && !parse_generate_spec(generate_spec, config)) {
        std::cerr << "error: --generate expects v,bbar,epsilon,seed\n";
        return 1;
    }
    if (!config.generate && config.instance_path.empty()) {
        std::cerr << "error: provide --instance or --generate\n";
        return 1;
    }
    config.gen_model = model_tag == "lt" ? ppsc::CoverageModel::LinearThreshold
                                         : ppsc::CoverageModel::IndependentCoverage;

    try {
        const std::vector<ppsc::CsvRow> rows = ppsc::run(config);
        std::ostringstream csv;
        csv << ppsc::csv_header() << '\n';
        for (const ppsc::CsvRow& row : rows) csv << ppsc::to_csv_line(row) << '\n';
        if (out_path.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream out(out_path);
            if (!out) {
                std::cerr << "error: cannot write " << out_path << '\n';
                return 1;
            }
            out << csv.str();
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
