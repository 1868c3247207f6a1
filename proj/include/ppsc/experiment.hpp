#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppsc/instance.hpp"
#include "ppsc/report.hpp"
#include "ppsc/scenario.hpp"

namespace ppsc {

/// One experiment: an instance source, a method, and replication settings.
struct RunConfig {
    std::string instance_path; // empty when generating
    bool generate = false;
    int gen_v = 0;
    double gen_bbar = 1.0;
    double gen_epsilon = 0.05;
    uint64_t gen_seed = 0;
    CoverageModel gen_model = CoverageModel::IndependentCoverage;

    std::string method = "exact"; // exact|benders-sub|benders-nv|dep|dep-lt|ltmip
    int kappa = 2;
    int omega = 100;
    int reps = 1;
    uint64_t scenario_seed = 1;
    double time_limit_s = -1;
    long node_limit = -1;
    std::string save_scenarios_path;
    std::string load_scenarios_path;
};

struct CsvRow {
    std::string method;
    int v = 0;
    double bbar = 0.0;
    double epsilon = 0.0;
    int omega = 0;
    int rep = 0;
    std::string status;
    double objective = 0.0;
    int feasible_true = 0;
    double time_master_s = 0.0;
    double time_oracle_s = 0.0;
    int master_cuts = 0;
    int oracle_cuts = 0;
    long nodes = 0;
};

std::string csv_header();
std::string to_csv_line(const CsvRow& row);

/// Runs the configured method for every replication. Replication r samples
/// its scenario set with seed scenario_seed + r, so methods sharing a config
/// see identical scenarios. Throws std::invalid_argument on incompatible
/// method/model combinations before any solve.
std::vector<CsvRow> run(const RunConfig& config);

/// Statistical gap estimate across replications: the smallest sampled master
/// value is a probabilistic lower bound, the best oracle-repaired value a
/// deterministic upper bound.
struct GapEstimate {
    std::vector<double> master_values;
    std::vector<double> feasible_values;
    double lower_bound = 0.0; // min master value
    double upper_bound = 0.0; // min feasible value
    double egap = 0.0;        // (ub - lb) / ub
    double confidence = 0.0;  // 1 - 0.5^M
    bool normal_approx_valid = false; // omega * epsilon >= 5
};

GapEstimate estimate_gap(const std::vector<double>& master_values,
                         const std::vector<double>& feasible_values, int omega,
                         double epsilon);

} // namespace ppsc
