#include "ppsc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ppsc/benders.hpp"
#include "ppsc/bnb.hpp"
#include "ppsc/exact.hpp"
#include "ppsc/ltmip.hpp"
#include "ppsc/oracle.hpp"

namespace ppsc {

std::string csv_header() {
    return "method,v,bbar,epsilon,omega,rep,status,objective,feasible_true,"
           "time_master_s,time_oracle_s,master_cuts,oracle_cuts,nodes";
}

std::string to_csv_line(const CsvRow& r) {
    std::ostringstream out;
    out.precision(10);
    out << r.method << ',' << r.v << ',' << r.bbar << ',' << r.epsilon << ',' << r.omega
        << ',' << r.rep << ',' << r.status << ',' << r.objective << ','
        << r.feasible_true << ',' << r.time_master_s << ',' << r.time_oracle_s << ','
        << r.master_cuts << ',' << r.oracle_cuts << ',' << r.nodes;
    return out.str();
}

namespace {

bool is_sampling_method(const std::string& method) {
    return method == "benders-sub" || method == "benders-nv" || method == "dep" ||
           method == "dep-lt";
}

CsvRow row_from_report(const SolveReport& report) {
    CsvRow row;
    row.status = to_string(report.status);
    row.objective = report.objective;
    row.feasible_true = report.feasible_true ? 1 : 0;
    row.time_master_s = report.master_time_s;
    row.time_oracle_s = report.oracle_time_s;
    row.master_cuts = report.master_cuts;
    row.oracle_cuts = report.oracle_cuts;
    row.nodes = report.nodes;
    return row;
}

SolveReport solve_dep_model(const PpscInstance& inst, const ScenarioSet& scenarios,
                            bool reduced_lt, const RunConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    mip::LinearModel model =
        reduced_lt ? build_dep_lt(inst, scenarios) : build_dep(inst, scenarios);
    mip::BnbLimits limits;
    limits.time_limit_s = config.time_limit_s;
    limits.max_nodes = config.node_limit;
    mip::SolveOutcome outcome = mip::solve_bnb(model, {}, limits);
    SolveReport report;
    report.nodes = outcome.nodes;
    report.lp_iterations = outcome.lp_iterations;
    report.best_bound = outcome.best_bound;
    switch (outcome.status) {
    case mip::MipStatus::Optimal: report.status = SolveStatus::Optimal; break;
    case mip::MipStatus::Limit: report.status = SolveStatus::Limit; break;
    default: report.status = SolveStatus::Infeasible; break;
    }
    report.master_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!outcome.values.empty()) {
        report.incumbent.assign(inst.num_sets, 0);
        for (int i = 0; i < inst.num_sets; ++i) report.incumbent[i] = outcome.values[i] > 0.5;
        report.objective = outcome.objective;
        report.sampled_objective = outcome.objective;
        const auto t1 = std::chrono::steady_clock::now();
        const FeasibilityCheck check = is_feasible(inst, report.incumbent);
        report.feasible_true = check.feasible;
        report.attained_probability = check.probability;
        report.oracle_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    }
    return report;
}

} // namespace

std::vector<CsvRow> run(const RunConfig& config) {
    PpscInstance inst = config.generate
                            ? generate_paper_instance(config.gen_model, config.gen_v,
                                                      config.gen_bbar, config.gen_epsilon,
                                                      config.gen_seed)
                            : load_instance(config.instance_path);

    const bool needs_lt = config.method == "dep-lt" || config.method == "ltmip";
    if (needs_lt && inst.model != CoverageModel::LinearThreshold)
        throw std::invalid_argument("method " + config.method +
                                    " requires a linear-threshold instance");
    if (!is_sampling_method(config.method) && config.method != "exact" &&
        config.method != "ltmip")
        throw std::invalid_argument("unknown method: " + config.method);
    if (config.reps < 1) throw std::invalid_argument("replication count must be positive");

    std::vector<CsvRow> rows;
    for (int rep = 0; rep < config.reps; ++rep) {
        SolveReport report;
        if (config.method == "exact") {
            ExactConfig ec;
            ec.kappa = config.kappa;
            ec.time_limit_s = config.time_limit_s;
            ec.node_limit = config.node_limit;
            report = solve_exact(inst, ec);
        } else if (config.method == "ltmip") {
            LtmipLimits limits;
            limits.time_limit_s = config.time_limit_s;
            limits.node_limit = config.node_limit;
            report = solve_ltmip(inst, limits);
        } else {
            ScenarioSet scenarios =
                config.load_scenarios_path.empty()
                    ? sample_scenarios(inst, config.omega, config.scenario_seed + rep)
                    : load_scenarios(config.load_scenarios_path, inst.num_sets,
                                     inst.num_items);
            if (!config.save_scenarios_path.empty() && rep == 0)
                save_scenarios(scenarios, config.save_scenarios_path);
            if (config.method == "dep" || config.method == "dep-lt") {
                report = solve_dep_model(inst, scenarios, config.method == "dep-lt", config);
            } else {
                SamplingConfig sc;
                sc.family = config.method == "benders-sub" ? CutFamily::Submodular
                                                           : CutFamily::NewValid;
                sc.kappa = config.kappa;
                sc.time_limit_s = config.time_limit_s;
                sc.node_limit = config.node_limit;
                report = solve_sampling(inst, scenarios, sc);
            }
        }
        CsvRow row = row_from_report(report);
        row.method = config.method;
        row.v = config.generate ? config.gen_v : inst.num_sets + inst.num_items;
        row.bbar = config.generate ? config.gen_bbar : 0.0;
        row.epsilon = inst.epsilon;
        row.omega = is_sampling_method(config.method) ? config.omega : 0;
        row.rep = rep;
        rows.push_back(std::move(row));
    }
    return rows;
}

GapEstimate estimate_gap(const std::vector<double>& master_values,
                         const std::vector<double>& feasible_values, int omega,
                         double epsilon) {
    if (master_values.empty() || feasible_values.empty())
        throw std::invalid_argument("gap estimation needs at least one replication");
    for (double v : master_values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite master value");
    for (double v : feasible_values)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite feasible value");
    GapEstimate est;
    est.master_values = master_values;
    est.feasible_values = feasible_values;
    est.lower_bound = *std::min_element(master_values.begin(), master_values.end());
    est.upper_bound = *std::min_element(feasible_values.begin(), feasible_values.end());
    est.egap = est.upper_bound == 0.0
                   ? 0.0
                   : (est.upper_bound - est.lower_bound) / est.upper_bound;
    est.confidence = 1.0 - std::pow(0.5, static_cast<double>(master_values.size()));
    est.normal_approx_valid = omega * epsilon >= 5.0;
    return est;
}

} // namespace ppsc
