#pragma once

#include <vector>

#include "ppsc/linear_model.hpp"

namespace ppsc::mip {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<double> values; // structural variables only
    double objective = 0.0;
    long iterations = 0;
};

struct LpOptions {
    double feas_tol = 1e-9;
    bool parallel_pivots = true; // OpenMP row updates on large tableaus
};

/// Two-phase dense tableau simplex over bounded variables, Dantzig pricing
/// with a Bland's-rule fallback once a pivot-count threshold is crossed.
/// Deterministic given the model. Numerical failure throws, never returns a
/// silently wrong answer.
LpSolution solve_lp(const LinearModel& model, const LpOptions& opts = {});

/// Same solver with the variable bounds replaced (used by branch and bound).
LpSolution solve_lp_bounded(const LinearModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper, const LpOptions& opts = {});

} // namespace ppsc::mip
