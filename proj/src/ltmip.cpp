#include "ppsc/ltmip.hpp"

#include <chrono>
#include <stdexcept>

#include "ppsc/bnb.hpp"
#include "ppsc/oracle.hpp"
#include "ppsc/simplex.hpp"

namespace ppsc {

using mip::LinearModel;
using mip::Relation;

LtmipModel build_ltmip(const PpscInstance& inst) {
    if (inst.model != CoverageModel::LinearThreshold)
        throw std::invalid_argument("compact model requires a linear-threshold instance");
    LtmipModel lt;
    lt.num_sets = inst.num_sets;
    lt.num_items = inst.num_items;
    lt.tau = inst.tau;
    lt.epsilon = inst.epsilon;
    LinearModel& model = lt.model;

    const int n = inst.num_sets;
    const int m = inst.num_items;
    for (int u = 0; u < n; ++u) model.add_binary("x" + std::to_string(u), inst.costs[u]);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= i; ++j)
            model.add_continuous("A" + std::to_string(i) + "_" + std::to_string(j), 0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= i; ++j)
                model.add_continuous("g" + std::to_string(u) + "_" + std::to_string(i) +
                                         "_" + std::to_string(j),
                                     0.0, 1.0);

    model.add_row("boundary", {{lt.table_index(0, 0), 1.0}}, Relation::Equal, 1.0);

    // Recursion rows: table(i, j) minus its expansion in terms of the previous
    // row and the gamma products equals zero. Item i (1-based here) carries
    // the weights of 0-based item i-1.
    for (int i = 1; i <= m; ++i) {
        const auto& arcs = inst.in_arcs[i - 1]; // (set, weight)
        for (int j = 0; j <= i; ++j) {
            std::vector<std::pair<int, double>> terms;
            terms.emplace_back(lt.table_index(i, j), 1.0);
            if (j < i) terms.emplace_back(lt.table_index(i - 1, j), -1.0);
            if (j < i)
                for (const auto& [u, w] : arcs)
                    terms.emplace_back(lt.gamma_index(u, i - 1, j), w);
            if (j > 0)
                for (const auto& [u, w] : arcs)
                    terms.emplace_back(lt.gamma_index(u, i - 1, j - 1), -w);
            model.add_row("recursion" + std::to_string(i) + "_" + std::to_string(j),
                          std::move(terms), Relation::Equal, 0.0);
        }
    }

    std::vector<std::pair<int, double>> goal;
    for (int j = inst.tau; j <= m; ++j) goal.emplace_back(lt.table_index(m, j), 1.0);
    model.add_row("goal", std::move(goal), Relation::GreaterEqual, 1.0 - inst.epsilon);

    for (int u = 0; u < n; ++u)
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= i; ++j) {
                const int g = lt.gamma_index(u, i, j);
                const int a = lt.table_index(i, j);
                const std::string suffix = std::to_string(u) + "_" + std::to_string(i) +
                                           "_" + std::to_string(j);
                model.add_row("mc_x" + suffix, {{g, 1.0}, {lt.x_index(u), -1.0}},
                              Relation::LessEqual, 0.0);
                model.add_row("mc_a" + suffix, {{g, 1.0}, {a, -1.0}}, Relation::LessEqual,
                              0.0);
                model.add_row("mc_lb" + suffix,
                              {{g, 1.0}, {a, -1.0}, {lt.x_index(u), -1.0}},
                              Relation::GreaterEqual, -1.0);
            }
    return lt;
}

double ltmip_goal_value_at(const LtmipModel& lt, const Selection& x) {
    if (static_cast<int>(x.size()) != lt.num_sets)
        throw std::invalid_argument("selection size does not match model");
    LinearModel fixed = lt.model;
    for (auto it = fixed.rows.begin(); it != fixed.rows.end(); ++it)
        if (it->name == "goal") {
            fixed.rows.erase(it);
            break;
        }
    for (int u = 0; u < lt.num_sets; ++u) {
        fixed.vars[u].lower = x[u] ? 1.0 : 0.0;
        fixed.vars[u].upper = fixed.vars[u].lower;
    }
    const mip::LpSolution sol = mip::solve_lp(fixed);
    if (sol.status != mip::LpStatus::Optimal)
        throw std::runtime_error("fixed-selection recursion system is infeasible");
    double tail = 0.0;
    for (int j = lt.tau; j <= lt.num_items; ++j) tail += sol.values[lt.table_index(lt.num_items, j)];
    return tail;
}

SolveReport solve_ltmip(const PpscInstance& inst, const LtmipLimits& limits) {
    const auto t0 = std::chrono::steady_clock::now();
    LtmipModel lt = build_ltmip(inst);
    mip::BnbLimits bnb_limits;
    bnb_limits.time_limit_s = limits.time_limit_s;
    bnb_limits.max_nodes = limits.node_limit;
    mip::SolveOutcome outcome = mip::solve_bnb(lt.model, {}, bnb_limits);

    SolveReport report;
    report.nodes = outcome.nodes;
    report.lp_iterations = outcome.lp_iterations;
    report.best_bound = outcome.best_bound;
    switch (outcome.status) {
    case mip::MipStatus::Optimal: report.status = SolveStatus::Optimal; break;
    case mip::MipStatus::Limit: report.status = SolveStatus::Limit; break;
    case mip::MipStatus::Unbounded:
        throw std::runtime_error("compact model reported unbounded");
    default: report.status = SolveStatus::Infeasible; break;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report.master_time_s = dt.count();
    if (!outcome.values.empty()) {
        report.incumbent.assign(inst.num_sets, 0);
        for (int u = 0; u < inst.num_sets; ++u)
            report.incumbent[u] = outcome.values[u] > 0.5;
        report.objective = outcome.objective;
        const auto t1 = std::chrono::steady_clock::now();
        const FeasibilityCheck check = is_feasible(inst, report.incumbent);
        report.feasible_true = check.feasible;
        report.attained_probability = check.probability;
        report.oracle_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    }
    return report;
}

} // namespace ppsc
