#pragma once

#include <string>
#include <vector>

#include "ppsc/instance.hpp"
#include "ppsc/linear_model.hpp"
#include "ppsc/oracle.hpp"
#include "ppsc/report.hpp"
#include "ppsc/scenario.hpp"

namespace ppsc {

/// Master problem of the sampling decomposition: binaries x and z, one
/// continuous theta per scenario with bounds [0, m], rows theta_w >= tau z_w
/// and sum p_w z_w >= 1 - epsilon. Cuts land in the model's pool.
struct BendersMaster {
    mip::LinearModel model;
    int num_sets = 0;
    int num_scenarios = 0;

    int x_index(int i) const { return i; }
    int z_index(int w) const { return num_sets + w; }
    int theta_index(int w) const { return num_sets + num_scenarios + w; }
};

BendersMaster build_master(const PpscInstance& instance, const ScenarioSet& scenarios);

/// Submodular feasibility cut at the support X:
/// theta_w <= sigma_w(X) + sum_{j not in X} rho_j(X) x_j.
mip::LinearCut separate_submodular(const LiveArcScenario& scenario, int scenario_index,
                                   const std::vector<int>& sets);

/// Parameter families for the common-coverage inequality. Family k couples a
/// set C1[k] of cover-sets with disjoint witness items C2[k], each pair of
/// C1[k] reaching exactly common_count[k] items of C2[k] outside interference.
struct NewValidSpec {
    std::vector<std::vector<int>> c1;
    std::vector<std::vector<int>> c2;
    std::vector<int> common_count; // n_w(C1^k)
    std::vector<int> d_set;        // optional D with eta corrections
};

/// Builds the common-coverage inequality
/// theta_w <= sum_k n_k (1 - sum_{j in C1^k} x_j) [+ sum_{k in D} eta_k (1 - x_k)]
///            + sum_j sigma_w({j}) x_j.
/// Validates the spec against the scenario and rejects it naming the first
/// offending pair.
mip::LinearCut evaluate_new_valid(const LiveArcScenario& scenario, int scenario_index,
                                  const NewValidSpec& spec, bool include_d);

/// Polynomial separation of the common-coverage inequality at a support:
/// items reachable from at least two cover-sets and at least one selected one
/// become singleton witness families. The result's right-hand side at the
/// support equals sigma_w(X), so it is violated exactly when theta exceeds
/// the scenario coverage.
mip::LinearCut separate_new_valid(const LiveArcScenario& scenario, int scenario_index,
                                  const std::vector<int>& sets);

enum class CutFamily { Submodular, NewValid };

struct SamplingConfig {
    CutFamily family = CutFamily::NewValid;
    int kappa = 2;
    double time_limit_s = -1;
    long node_limit = -1;
    double feasibility_tol = kFeasibilityTol;
};

/// Two-phase sampling solver: a Benders phase drives the master to the
/// sampled optimum with the configured cut family, then an oracle phase adds
/// strengthened no-good cuts until the incumbent satisfies the true chance
/// constraint.
SolveReport solve_sampling(const PpscInstance& instance, const ScenarioSet& scenarios,
                           const SamplingConfig& config = {});

/// Monolithic deterministic equivalent of the sampled problem, with item
/// coverage binaries y and scenario indicators z.
mip::LinearModel build_dep(const PpscInstance& instance, const ScenarioSet& scenarios);

/// Reduced (x, z)-space equivalent for linear-threshold scenario sets, where
/// per-set coverage counts are additive. Rejects scenario sets with an item
/// in-degree above one.
mip::LinearModel build_dep_lt(const PpscInstance& instance, const ScenarioSet& scenarios);

} // namespace ppsc
