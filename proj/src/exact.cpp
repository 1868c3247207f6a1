#include "ppsc/exact.hpp"

#include <chrono>
#include <stdexcept>

#include "ppsc/bnb.hpp"

namespace ppsc {

using mip::CutTag;
using mip::LinearCut;
using mip::Relation;

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    default: return "limit";
    }
}

LinearCut build_no_good_cut(const Selection& x_bar) {
    LinearCut cut;
    cut.rel = Relation::GreaterEqual;
    cut.tag = CutTag::NoGood;
    int ones = 0;
    for (size_t i = 0; i < x_bar.size(); ++i) {
        if (x_bar[i]) {
            cut.coeffs["x" + std::to_string(i)] = -1.0;
            ++ones;
        } else {
            cut.coeffs["x" + std::to_string(i)] = 1.0;
        }
    }
    cut.rhs = 1.0 - ones;
    return cut;
}

std::vector<double> probe_singleton_tails_serial(const PpscInstance& inst,
                                                 const CoverageVector& cv) {
    std::vector<double> tails;
    tails.reserve(inst.num_sets);
    const double accept = 1.0 - inst.epsilon - kFeasibilityTol;
    for (int j = 0; j < inst.num_sets; ++j) {
        if (cv.selection[j]) {
            tails.push_back(-1.0);
            continue;
        }
        const double t = tail_probability(update_coverage(cv, j), inst.tau);
        tails.push_back(t);
        if (t >= accept) break; // first feasible singleton settles the cut
    }
    return tails;
}

std::vector<double> probe_singleton_tails(const PpscInstance& inst, const CoverageVector& cv) {
    std::vector<double> tails(inst.num_sets, -1.0);
    // Each probe costs O(m^2); below this budget thread startup dominates.
    const bool parallel =
        static_cast<long>(inst.num_sets) * inst.num_items * inst.num_items > 500000;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int j = 0; j < inst.num_sets; ++j) {
        if (cv.selection[j]) continue;
        tails[j] = tail_probability(update_coverage(cv, j), inst.tau);
    }
    return tails;
}

LinearCut build_strengthened_cut(const PpscInstance& inst, const Selection& x_bar,
                                 int kappa, double feas_tol) {
    if (kappa != 1 && kappa != 2) throw std::invalid_argument("kappa must be 1 or 2");
    LinearCut cut;
    cut.rel = Relation::GreaterEqual;
    cut.tag = CutTag::StrengthenedNoGood;
    std::vector<int> zero_sets;
    for (size_t j = 0; j < x_bar.size(); ++j)
        if (!x_bar[j]) zero_sets.push_back(static_cast<int>(j));
    if (zero_sets.empty())
        throw std::invalid_argument("no unselected set left to strengthen over");
    for (int j : zero_sets) cut.coeffs["x" + std::to_string(j)] = 1.0;
    cut.rhs = 1.0;
    if (kappa == 1) return cut;

    const CoverageVector cv = coverage_vector(inst, x_bar);
    const double accept = 1.0 - inst.epsilon - feas_tol;
    const std::vector<double> tails = probe_singleton_tails(inst, cv);
    for (int j : zero_sets)
        if (tails[j] >= accept) return cut; // some single addition suffices
    cut.rhs = 2.0;
    return cut;
}

SolveReport solve_exact(const PpscInstance& inst, const ExactConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    const double accept = 1.0 - inst.epsilon - config.feasibility_tol;

    // If even the full selection misses the target probability, monotonicity
    // rules every selection out.
    const Selection all_ones(inst.num_sets, 1);
    const FeasibilityCheck full = is_feasible(inst, all_ones, config.feasibility_tol);
    if (!full.feasible) {
        report.status = SolveStatus::Infeasible;
        return report;
    }

    mip::LinearModel master;
    for (int i = 0; i < inst.num_sets; ++i)
        master.add_binary("x" + std::to_string(i), inst.costs[i]);
    if (inst.tau >= 1 && !(0.0 >= accept)) {
        // The empty selection can never pass, so seed its strengthened cut.
        LinearCut seed;
        seed.rel = Relation::GreaterEqual;
        seed.rhs = 1.0;
        seed.tag = CutTag::StrengthenedNoGood;
        for (int i = 0; i < inst.num_sets; ++i) seed.coeffs["x" + std::to_string(i)] = 1.0;
        add_cut(master, seed);
        report.cuts.push_back(seed);
    }

    auto oracle_callback = [&](const std::vector<double>& candidate) {
        Selection x(inst.num_sets, 0);
        double obj = 0.0;
        for (int i = 0; i < inst.num_sets; ++i) {
            x[i] = candidate[i] > 0.5;
            if (x[i]) obj += inst.costs[i];
        }
        report.candidate_objectives.push_back(obj);
        const double tail = tail_probability(coverage_vector(inst, x), inst.tau);
        if (tail >= accept) return std::vector<LinearCut>{};
        ++report.master_iterations;
        return std::vector<LinearCut>{
            build_strengthened_cut(inst, x, config.kappa, config.feasibility_tol)};
    };

    mip::BnbLimits limits;
    limits.max_nodes = config.node_limit;
    limits.time_limit_s = config.time_limit_s;
    mip::SolveOutcome outcome = mip::solve_bnb(master, oracle_callback, limits);

    report.nodes = outcome.nodes;
    report.lp_iterations = outcome.lp_iterations;
    report.best_bound = outcome.best_bound;
    for (const LinearCut& cut : outcome.generated_cuts) report.cuts.push_back(cut);
    report.oracle_cuts = static_cast<int>(report.cuts.size());

    switch (outcome.status) {
    case mip::MipStatus::Optimal: report.status = SolveStatus::Optimal; break;
    case mip::MipStatus::Limit: report.status = SolveStatus::Limit; break;
    case mip::MipStatus::Unbounded:
        throw std::runtime_error("master problem reported unbounded");
    default: report.status = SolveStatus::Infeasible; break;
    }
    if (!outcome.values.empty()) {
        report.incumbent.assign(inst.num_sets, 0);
        for (int i = 0; i < inst.num_sets; ++i)
            report.incumbent[i] = outcome.values[i] > 0.5;
        report.objective = outcome.objective;
        const FeasibilityCheck check =
            is_feasible(inst, report.incumbent, config.feasibility_tol);
        report.feasible_true = check.feasible;
        report.attained_probability = check.probability;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.oracle_time_s = elapsed.count();
    return report;
}

} // namespace ppsc
