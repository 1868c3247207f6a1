#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ppsc/instance.hpp"

namespace ppsc {

/// One sampled live-arc realization of the coverage graph. For linear
/// threshold instances every item has at most one incoming live arc.
struct LiveArcScenario {
    int num_sets = 0;
    int num_items = 0;
    double probability = 0.0;                  // occurrence weight p_omega
    std::vector<std::vector<int>> out_items;   // per set: live-covered items
    std::vector<std::vector<int>> in_sets;     // per item: sets with a live arc
    std::vector<std::vector<uint64_t>> cover;  // per set: item bitmask

    std::vector<std::pair<int, int>> arcs() const;
};

LiveArcScenario make_scenario(int num_sets, int num_items,
                              const std::vector<std::pair<int, int>>& arcs,
                              double probability);

struct ScenarioSet {
    std::vector<LiveArcScenario> scenarios;

    int size() const { return static_cast<int>(scenarios.size()); }
};

/// Samples `count` equiprobable live-arc scenarios. Independent coverage
/// tosses a biased coin per arc; linear threshold lets each item pick one
/// incoming arc (or none) with the arc weights as probabilities. Scenario k
/// uses the stream derived from (seed, k), so it is reproducible regardless
/// of count or thread schedule.
ScenarioSet sample_scenarios(const PpscInstance& instance, int count, uint64_t seed);
ScenarioSet sample_scenarios_serial(const PpscInstance& instance, int count, uint64_t seed);

/// Number of items covered by the support set X in this scenario.
int sigma(const LiveArcScenario& scenario, const std::vector<int>& sets);

/// sigma(X + j) - sigma(X); j must not be in X.
int marginal_gain(const LiveArcScenario& scenario, const std::vector<int>& sets, int j);

/// Items reachable from every node of B and from no node of N (B, N disjoint).
std::vector<int> common_reach(const LiveArcScenario& scenario, const std::vector<int>& b_set,
                              const std::vector<int>& n_set);

/// Count of items reachable from k and from no other cover-set.
int eta(const LiveArcScenario& scenario, int k);

/// Coverage counts of one support across all scenarios.
std::vector<int> sigma_batch(const ScenarioSet& set, const std::vector<int>& sets);
std::vector<int> sigma_batch_serial(const ScenarioSet& set, const std::vector<int>& sets);

/// Total weight of scenarios whose coverage count reaches tau.
double empirical_prob(const ScenarioSet& set, const Selection& x, int tau);

/// JSON persistence: {count, weights, arcs:[[ [i,j], ... ] per scenario]}.
/// The graph dimensions come from the caller since the document stores arcs only.
void save_scenarios(const ScenarioSet& set, const std::string& path);
ScenarioSet load_scenarios(const std::string& path, int num_sets, int num_items);

} // namespace ppsc
