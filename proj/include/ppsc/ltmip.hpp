#pragma once

#include "ppsc/instance.hpp"
#include "ppsc/linear_model.hpp"
#include "ppsc/report.hpp"

namespace ppsc {

/// Exact compact MIP for linear-threshold instances: the coverage-count
/// recursion becomes equality rows over triangular table variables, with
/// McCormick rows linking the bilinear products gamma = table * x. Variable
/// count is n + (m+1)(m+2)/2 + n (m+1)(m+2)/2.
struct LtmipModel {
    mip::LinearModel model;
    int num_sets = 0;
    int num_items = 0;
    int tau = 0;
    double epsilon = 0.0;

    int x_index(int u) const { return u; }
    int table_index(int i, int j) const { return num_sets + i * (i + 1) / 2 + j; }
    int gamma_index(int u, int i, int j) const {
        const int tri = (num_items + 1) * (num_items + 2) / 2;
        return num_sets + tri + u * tri + i * (i + 1) / 2 + j;
    }
};

/// Builds the full model. Rejects non-linear-threshold instances.
LtmipModel build_ltmip(const PpscInstance& instance);

/// Fixes a binary selection inside the constraint system (goal row dropped)
/// and returns the value of the goal expression; at binary points this must
/// reproduce the DP tail probability.
double ltmip_goal_value_at(const LtmipModel& ltmip, const Selection& x);

struct LtmipLimits {
    double time_limit_s = -1;
    long node_limit = -1;
};

SolveReport solve_ltmip(const PpscInstance& instance, const LtmipLimits& limits = {});

} // namespace ppsc
