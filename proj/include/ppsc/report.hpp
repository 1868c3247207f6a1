#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ppsc/instance.hpp"
#include "ppsc/linear_model.hpp"

namespace ppsc {

enum class SolveStatus { Optimal, Infeasible, Limit };

std::string to_string(SolveStatus status);

/// Outcome of one PPSC solve, whatever the method.
struct SolveReport {
    SolveStatus status = SolveStatus::Infeasible;
    Selection incumbent;
    double objective = std::numeric_limits<double>::quiet_NaN();
    /// Optimum of the sampled problem at the end of the sampling phase, for
    /// methods that have one (NaN otherwise).
    double sampled_objective = std::numeric_limits<double>::quiet_NaN();
    bool feasible_true = false;        // DP-oracle verdict on the incumbent
    double attained_probability = 0.0;
    long nodes = 0;
    long lp_iterations = 0;
    int master_cuts = 0;               // sampling-phase cuts
    int oracle_cuts = 0;               // feasibility cuts certified by the oracle
    int master_iterations = 0;         // candidates rejected by the oracle/benders check
    double master_time_s = 0.0;
    double oracle_time_s = 0.0;
    double best_bound = std::numeric_limits<double>::quiet_NaN();
    std::vector<mip::LinearCut> cuts;  // every cut generated, tagged by family
    /// Objective of each candidate the oracle (or empirical) check saw, in
    /// order; nondecreasing under best-bound search.
    std::vector<double> candidate_objectives;
};

} // namespace ppsc
