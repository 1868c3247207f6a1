#pragma once

#include <cstdint>
#include <vector>

#include "ppsc/instance.hpp"
#include "ppsc/linear_model.hpp"
#include "ppsc/oracle.hpp"
#include "ppsc/report.hpp"

namespace ppsc {

struct ExactConfig {
    int kappa = 2; // 1 or 2
    double time_limit_s = -1;
    long node_limit = -1;
    double feasibility_tol = kFeasibilityTol;
};

/// Classic no-good cut excluding exactly the point x_bar:
/// sum_{i in J1} (1 - x_i) + sum_{j in J0} x_j >= 1.
mip::LinearCut build_no_good_cut(const Selection& x_bar);

/// Strengthened no-good cut sum_{j in J0} x_j >= kappa(J0), valid because the
/// oracle is monotone in x. With kappa = 2 every singleton addition to the
/// support is probed with the O(m) coverage update; the right-hand side rises
/// to 2 only when no single addition restores feasibility. Requires a
/// nonempty J0.
mip::LinearCut build_strengthened_cut(const PpscInstance& instance, const Selection& x_bar,
                                      int kappa, double feas_tol = kFeasibilityTol);

/// Tail probabilities of all singleton additions x_bar + e_j for j with
/// x_bar_j = 0, in ascending j order. Parallel over probes; the serial
/// reference stops early once `stop_at` is reached (the cut construction only
/// needs the first feasible singleton).
std::vector<double> probe_singleton_tails(const PpscInstance& instance,
                                          const CoverageVector& cv);
std::vector<double> probe_singleton_tails_serial(const PpscInstance& instance,
                                                 const CoverageVector& cv);

/// Delayed constraint generation with the exact probability oracle: solve the
/// relaxed master, test the candidate with the DP oracle, cut and repeat,
/// all inside one branch-and-cut tree via the lazy-callback protocol.
SolveReport solve_exact(const PpscInstance& instance, const ExactConfig& config = {});

} // namespace ppsc
