#include "ppsc/benders.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "ppsc/bnb.hpp"
#include "ppsc/exact.hpp"

namespace ppsc {

using mip::CutTag;
using mip::LinearCut;
using mip::LinearModel;
using mip::Relation;

namespace {

std::string xname(int i) { return "x" + std::to_string(i); }
std::string zname(int w) { return "z" + std::to_string(w); }
std::string tname(int w) { return "theta" + std::to_string(w); }

int singleton_sigma(const LiveArcScenario& scn, int i) {
    return static_cast<int>(scn.out_items.at(i).size());
}

} // namespace

BendersMaster build_master(const PpscInstance& inst, const ScenarioSet& scenarios) {
    BendersMaster master;
    master.num_sets = inst.num_sets;
    master.num_scenarios = scenarios.size();
    LinearModel& model = master.model;
    for (int i = 0; i < inst.num_sets; ++i) model.add_binary(xname(i), inst.costs[i]);
    for (int w = 0; w < scenarios.size(); ++w) model.add_binary(zname(w));
    for (int w = 0; w < scenarios.size(); ++w)
        model.add_continuous(tname(w), 0.0, inst.num_items);
    for (int w = 0; w < scenarios.size(); ++w)
        model.add_row("coverage_target" + std::to_string(w),
                      {{master.theta_index(w), 1.0}, {master.z_index(w), -double(inst.tau)}},
                      Relation::GreaterEqual, 0.0);
    std::vector<std::pair<int, double>> risk;
    for (int w = 0; w < scenarios.size(); ++w)
        risk.emplace_back(master.z_index(w), scenarios.scenarios[w].probability);
    model.add_row("risk_budget", std::move(risk), Relation::GreaterEqual,
                  1.0 - inst.epsilon);
    return master;
}

LinearCut separate_submodular(const LiveArcScenario& scn, int scenario_index,
                              const std::vector<int>& sets) {
    LinearCut cut;
    cut.rel = Relation::LessEqual;
    cut.tag = CutTag::Submodular;
    cut.coeffs[tname(scenario_index)] = 1.0;
    cut.rhs = sigma(scn, sets);
    std::vector<uint8_t> chosen(scn.num_sets, 0);
    for (int i : sets) chosen.at(i) = 1;
    for (int j = 0; j < scn.num_sets; ++j) {
        if (chosen[j]) continue;
        const int gain = marginal_gain(scn, sets, j);
        if (gain != 0) cut.coeffs[xname(j)] = -double(gain);
    }
    return cut;
}

LinearCut evaluate_new_valid(const LiveArcScenario& scn, int scenario_index,
                             const NewValidSpec& spec, bool include_d) {
    const size_t families = spec.c1.size();
    if (spec.c2.size() != families || spec.common_count.size() != families)
        throw std::invalid_argument("family lists have inconsistent lengths");
    std::vector<uint8_t> item_used(scn.num_items, 0);
    std::vector<int> all_sets(scn.num_sets);
    for (int i = 0; i < scn.num_sets; ++i) all_sets[i] = i;
    for (size_t k = 0; k < families; ++k) {
        if (spec.c1[k].size() < 2)
            throw std::invalid_argument("family " + std::to_string(k) +
                                        " needs at least two cover-sets");
        if (spec.common_count[k] < 0)
            throw std::invalid_argument("common count must be nonnegative");
        for (int item : spec.c2[k]) {
            if (item < 0 || item >= scn.num_items)
                throw std::invalid_argument("witness item out of range");
            if (item_used[item])
                throw std::invalid_argument("witness families overlap at item " +
                                            std::to_string(item));
            item_used[item] = 1;
        }
        // Every pair of the family must share exactly the declared number of
        // witness items once outside sets are excluded.
        std::vector<int> outside;
        std::vector<uint8_t> inside(scn.num_sets, 0);
        for (int i : spec.c1[k]) inside.at(i) = 1;
        for (int i = 0; i < scn.num_sets; ++i)
            if (!inside[i]) outside.push_back(i);
        std::vector<uint8_t> witness(scn.num_items, 0);
        for (int item : spec.c2[k]) witness[item] = 1;
        for (size_t a = 0; a < spec.c1[k].size(); ++a)
            for (size_t b = a + 1; b < spec.c1[k].size(); ++b) {
                const std::vector<int> reach =
                    common_reach(scn, {spec.c1[k][a], spec.c1[k][b]}, outside);
                int hits = 0;
                for (int item : reach) hits += witness[item];
                if (hits != spec.common_count[k])
                    throw std::invalid_argument(
                        "pair (" + std::to_string(spec.c1[k][a]) + "," +
                        std::to_string(spec.c1[k][b]) + ") of family " + std::to_string(k) +
                        " shares " + std::to_string(hits) + " witness items, expected " +
                        std::to_string(spec.common_count[k]));
            }
    }

    std::vector<double> coef(scn.num_sets, 0.0);
    for (int j = 0; j < scn.num_sets; ++j) coef[j] = singleton_sigma(scn, j);
    double rhs = 0.0;
    for (size_t k = 0; k < families; ++k) {
        rhs += spec.common_count[k];
        for (int j : spec.c1[k]) coef[j] -= spec.common_count[k];
    }
    if (include_d) {
        for (int k : spec.d_set) {
            const int e = eta(scn, k);
            rhs += e;
            coef[k] -= e;
        }
    }
    LinearCut cut;
    cut.rel = Relation::LessEqual;
    cut.tag = CutTag::NewValid;
    cut.coeffs[tname(scenario_index)] = 1.0;
    cut.rhs = rhs;
    for (int j = 0; j < scn.num_sets; ++j)
        if (coef[j] != 0.0) cut.coeffs[xname(j)] = -coef[j];
    return cut;
}

LinearCut separate_new_valid(const LiveArcScenario& scn, int scenario_index,
                             const std::vector<int>& sets) {
    std::vector<uint8_t> chosen(scn.num_sets, 0);
    for (int i : sets) chosen.at(i) = 1;
    std::vector<double> coef(scn.num_sets, 0.0);
    for (int j = 0; j < scn.num_sets; ++j) coef[j] = singleton_sigma(scn, j);
    double rhs = 0.0;
    for (int item = 0; item < scn.num_items; ++item) {
        const auto& reach = scn.in_sets[item];
        if (reach.size() < 2) continue;
        bool touched = false;
        for (int i : reach)
            if (chosen[i]) {
                touched = true;
                break;
            }
        if (!touched) continue;
        rhs += 1.0; // singleton witness family for this item
        for (int i : reach) coef[i] -= 1.0;
    }
    LinearCut cut;
    cut.rel = Relation::LessEqual;
    cut.tag = CutTag::NewValid;
    cut.coeffs[tname(scenario_index)] = 1.0;
    cut.rhs = rhs;
    for (int j = 0; j < scn.num_sets; ++j)
        if (coef[j] != 0.0) cut.coeffs[xname(j)] = -coef[j];
    return cut;
}

SolveReport solve_sampling(const PpscInstance& inst, const ScenarioSet& scenarios,
                           const SamplingConfig& config) {
    if (scenarios.size() < 1) throw std::invalid_argument("empty scenario set");
    SolveReport report;
    BendersMaster master = build_master(inst, scenarios);
    const double accept_true = 1.0 - inst.epsilon - config.feasibility_tol;
    const double accept_sampled = 1.0 - inst.epsilon - 1e-9;

    auto benders_callback = [&](const std::vector<double>& candidate) {
        std::vector<int> sets;
        double obj = 0.0;
        for (int i = 0; i < inst.num_sets; ++i)
            if (candidate[master.x_index(i)] > 0.5) {
                sets.push_back(i);
                obj += inst.costs[i];
            }
        report.candidate_objectives.push_back(obj);
        const std::vector<int> counts = sigma_batch(scenarios, sets);
        double covered_mass = 0.0;
        for (int w = 0; w < scenarios.size(); ++w)
            if (counts[w] >= inst.tau) covered_mass += scenarios.scenarios[w].probability;
        if (covered_mass >= accept_sampled) return std::vector<LinearCut>{};
        ++report.master_iterations;
        std::vector<LinearCut> cuts;
        for (int w = 0; w < scenarios.size(); ++w) {
            const double theta = candidate[master.theta_index(w)];
            if (inst.tau <= counts[w] || theta <= counts[w]) continue;
            LinearCut cut = config.family == CutFamily::Submodular
                                ? separate_submodular(scenarios.scenarios[w], w, sets)
                                : separate_new_valid(scenarios.scenarios[w], w, sets);
            if (cut_violation(master.model, cut, candidate) > mip::kCutViolationTol)
                cuts.push_back(std::move(cut));
        }
        return cuts;
    };

    mip::BnbLimits limits;
    limits.max_nodes = config.node_limit;
    limits.time_limit_s = config.time_limit_s;

    bool benders_phase = true;
    bool checked_full_selection = false;
    while (true) {
        const auto t0 = std::chrono::steady_clock::now();
        mip::SolveOutcome outcome = mip::solve_bnb(master.model, benders_callback, limits);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        (benders_phase ? report.master_time_s : report.oracle_time_s) += dt.count();
        report.nodes += outcome.nodes;
        report.lp_iterations += outcome.lp_iterations;
        for (const LinearCut& cut : outcome.generated_cuts) report.cuts.push_back(cut);

        if (outcome.status == mip::MipStatus::Limit) {
            report.status = SolveStatus::Limit;
            report.best_bound = outcome.best_bound;
            if (!outcome.values.empty()) {
                report.incumbent.assign(inst.num_sets, 0);
                for (int i = 0; i < inst.num_sets; ++i)
                    report.incumbent[i] = outcome.values[master.x_index(i)] > 0.5;
                report.objective = outcome.objective;
            }
            break;
        }
        if (outcome.status != mip::MipStatus::Optimal) {
            report.status = SolveStatus::Infeasible;
            break;
        }

        Selection x(inst.num_sets, 0);
        for (int i = 0; i < inst.num_sets; ++i)
            x[i] = outcome.values[master.x_index(i)] > 0.5;
        if (benders_phase) {
            report.sampled_objective = outcome.objective;
            benders_phase = false;
        }

        const FeasibilityCheck check = is_feasible(inst, x, config.feasibility_tol);
        if (check.feasible) {
            report.status = SolveStatus::Optimal;
            report.incumbent = std::move(x);
            report.objective = outcome.objective;
            report.best_bound = outcome.objective;
            report.feasible_true = true;
            report.attained_probability = check.probability;
            break;
        }

        if (!checked_full_selection) {
            checked_full_selection = true;
            const Selection all_ones(inst.num_sets, 1);
            const double full = tail_probability(coverage_vector(inst, all_ones), inst.tau);
            if (full < accept_true) {
                report.status = SolveStatus::Infeasible;
                break;
            }
        }
        LinearCut repair =
            build_strengthened_cut(inst, x, config.kappa, config.feasibility_tol);
        repair.tag = CutTag::OraclePhase;
        if (add_cut(master.model, repair)) report.cuts.push_back(repair);
    }

    for (const LinearCut& cut : report.cuts) {
        if (cut.tag == CutTag::OraclePhase)
            ++report.oracle_cuts;
        else
            ++report.master_cuts;
    }
    return report;
}

LinearModel build_dep(const PpscInstance& inst, const ScenarioSet& scenarios) {
    LinearModel model;
    for (int i = 0; i < inst.num_sets; ++i) model.add_binary(xname(i), inst.costs[i]);
    std::vector<std::vector<int>> y(scenarios.size(),
                                    std::vector<int>(inst.num_items, -1));
    for (int w = 0; w < scenarios.size(); ++w)
        for (int i = 0; i < inst.num_items; ++i)
            y[w][i] = model.add_binary("y" + std::to_string(i) + "_" + std::to_string(w));
    for (int w = 0; w < scenarios.size(); ++w) model.add_binary(zname(w));
    const int z0 = model.var_index(zname(0));

    for (int w = 0; w < scenarios.size(); ++w) {
        const LiveArcScenario& scn = scenarios.scenarios[w];
        for (int i = 0; i < inst.num_items; ++i) {
            std::vector<std::pair<int, double>> terms;
            for (int set : scn.in_sets[i]) terms.emplace_back(set, 1.0);
            terms.emplace_back(y[w][i], -1.0);
            model.add_row("cover" + std::to_string(i) + "_" + std::to_string(w),
                          std::move(terms), Relation::GreaterEqual, 0.0);
        }
        std::vector<std::pair<int, double>> count;
        for (int i = 0; i < inst.num_items; ++i) count.emplace_back(y[w][i], 1.0);
        count.emplace_back(z0 + w, -double(inst.tau));
        model.add_row("target" + std::to_string(w), std::move(count),
                      Relation::GreaterEqual, 0.0);
    }
    std::vector<std::pair<int, double>> risk;
    for (int w = 0; w < scenarios.size(); ++w)
        risk.emplace_back(z0 + w, scenarios.scenarios[w].probability);
    model.add_row("risk_budget", std::move(risk), Relation::GreaterEqual,
                  1.0 - inst.epsilon);
    // The selection determines every coverage and indicator variable, so
    // branch the x block first, then indicators, and dive to a first
    // incumbent before best-bound search; otherwise the tree floods plateaus
    // of (y, z) completions that all share one objective value.
    model.branch_priority.assign(model.vars.size(), 0);
    for (int i = 0; i < inst.num_sets; ++i) model.branch_priority[i] = 2;
    for (int w = 0; w < scenarios.size(); ++w) model.branch_priority[z0 + w] = 1;
    model.dive_first = true;
    return model;
}

LinearModel build_dep_lt(const PpscInstance& inst, const ScenarioSet& scenarios) {
    for (int w = 0; w < scenarios.size(); ++w)
        for (int i = 0; i < inst.num_items; ++i)
            if (scenarios.scenarios[w].in_sets[i].size() > 1)
                throw std::invalid_argument(
                    "scenario " + std::to_string(w) + " has in-degree above one at item " +
                    std::to_string(i) + "; reduced formulation needs linear-threshold scenarios");
    LinearModel model;
    for (int i = 0; i < inst.num_sets; ++i) model.add_binary(xname(i), inst.costs[i]);
    for (int w = 0; w < scenarios.size(); ++w) model.add_binary(zname(w));
    for (int w = 0; w < scenarios.size(); ++w) {
        const LiveArcScenario& scn = scenarios.scenarios[w];
        std::vector<std::pair<int, double>> terms;
        for (int i = 0; i < inst.num_sets; ++i) {
            const int count = singleton_sigma(scn, i);
            if (count > 0) terms.emplace_back(i, double(count));
        }
        terms.emplace_back(model.var_index(zname(w)), -double(inst.tau));
        model.add_row("target" + std::to_string(w), std::move(terms),
                      Relation::GreaterEqual, 0.0);
    }
    std::vector<std::pair<int, double>> risk;
    for (int w = 0; w < scenarios.size(); ++w)
        risk.emplace_back(model.var_index(zname(w)), scenarios.scenarios[w].probability);
    model.add_row("risk_budget", std::move(risk), Relation::GreaterEqual,
                  1.0 - inst.epsilon);
    model.branch_priority.assign(model.vars.size(), 0);
    for (int i = 0; i < inst.num_sets; ++i) model.branch_priority[i] = 1;
    model.dive_first = true;
    return model;
}

} // namespace ppsc
