#pragma once

#include <cstdint>
#include <vector>

#include "ppsc/instance.hpp"

namespace ppsc {

/// Default slack on chance-constraint comparisons: a selection counts as
/// feasible when its tail probability is >= 1 - epsilon - kFeasibilityTol.
/// Guards against float roundoff flipping feasibility at the boundary.
inline constexpr double kFeasibilityTol = 1e-9;

/// Per-item coverage probabilities P(x, i) for a fixed selection x, under the
/// instance's coverage model. Pure data; safe to share across threads.
struct CoverageVector {
    const PpscInstance* instance = nullptr;
    Selection selection;
    std::vector<double> item_prob; // size num_items, each in [0,1]
};

/// O(nm) from-scratch evaluation of the per-item coverage probabilities.
CoverageVector coverage_vector(const PpscInstance& instance, const Selection& x);

/// O(m) update of a coverage vector after adding one cover-set to the
/// selection. Requires x_j = 0 in cv's selection; equals the from-scratch
/// recomputation for the augmented selection.
CoverageVector update_coverage(const CoverageVector& cv, int added_set);

/// Triangular Poisson-binomial table: entry(i, j) is the probability that the
/// selection covers exactly j of the first i items, 0 <= j <= i <= items.
/// Every row sums to one.
struct OracleTable {
    int items = 0;
    std::vector<double> prob; // row-major triangular, offset i*(i+1)/2 + j

    double at(int i, int j) const { return prob[static_cast<size_t>(i) * (i + 1) / 2 + j]; }
    double row_sum(int i) const;
    /// P(coverage count >= tau); tau must lie in [0, items].
    double tail(int tau) const;
};

/// Fills the dynamic-programming table in O(m^2). Item order is fixed as
/// 0..m-1; the tail value is order invariant.
OracleTable build_table(const CoverageVector& cv);

/// Exact P(sigma(x) >= tau). Equivalent to build_table(cv).tail(tau).
double tail_probability(const CoverageVector& cv, int tau);

struct FeasibilityCheck {
    bool feasible = false;
    double probability = 0.0;
};

/// Evaluates the chance constraint exactly with the DP oracle.
FeasibilityCheck is_feasible(const PpscInstance& instance, const Selection& x,
                             double tol = kFeasibilityTol);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Unbiased Monte-Carlo estimate of P(sigma(x) >= tau): items are simulated
/// independently with their exact coverage probabilities. Deterministic given
/// the seed, regardless of thread count (fixed-size sample blocks each own an
/// independent stream).
McEstimate monte_carlo_estimate(const PpscInstance& instance, const Selection& x,
                                int tau, long samples, uint64_t seed);

/// Serial reference for the estimator above; identical output by construction.
McEstimate monte_carlo_estimate_serial(const PpscInstance& instance, const Selection& x,
                                       int tau, long samples, uint64_t seed);

} // namespace ppsc
