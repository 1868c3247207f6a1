#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ppsc {

enum class CoverageModel { IndependentCoverage, LinearThreshold };

std::string to_string(CoverageModel model);
CoverageModel coverage_model_from_string(const std::string& tag);

/// One weighted covering arc: cover-set `set` reaches item `item` with
/// probability (or threshold weight) `weight`.
struct ArcWeight {
    int set = 0;
    int item = 0;
    double weight = 0.0;

    bool operator==(const ArcWeight&) const = default;
};

/// A probabilistic partial set covering instance on a bipartite graph with
/// `num_sets` cover-sets and `num_items` items. The goal is to select
/// cover-sets of minimum total cost so that at least `tau` items are covered
/// with probability at least 1 - epsilon, where the coverage law is either
/// independent per-arc coverage or the linear threshold model.
///
/// Instances are immutable after validate(); all queries are safe for
/// concurrent shared reads.
struct PpscInstance {
    CoverageModel model = CoverageModel::IndependentCoverage;
    int num_sets = 0;
    int num_items = 0;
    std::vector<double> costs;      // one per cover-set, nonnegative
    std::vector<ArcWeight> weights; // sparse, sorted by (set, item)
    int tau = 0;
    double epsilon = 0.0;

    // Derived adjacency, built by validate().
    std::vector<std::vector<std::pair<int, double>>> out_arcs; // per set: (item, w)
    std::vector<std::vector<std::pair<int, double>>> in_arcs;  // per item: (set, w)

    bool operator==(const PpscInstance& other) const {
        return model == other.model && num_sets == other.num_sets &&
               num_items == other.num_items && costs == other.costs &&
               weights == other.weights && tau == other.tau && epsilon == other.epsilon;
    }
};

/// Checks every instance invariant and builds the adjacency tables. Throws
/// std::invalid_argument naming the first violated invariant. Returns the
/// same instance so construction can be written as validate(make(...)).
PpscInstance& validate(PpscInstance& instance);

/// Convenience constructor: fills the fields and validates.
PpscInstance make_instance(CoverageModel model, int num_sets, int num_items,
                           std::vector<double> costs, std::vector<ArcWeight> weights,
                           int tau, double epsilon);

/// Builds the complete-bipartite benchmark family: v total nodes split evenly
/// into n = m = v/2, a high-coverage head group of min(10, n) cover-sets and a
/// low-coverage tail, costs scaled by `bbar` (bbar = 1 means unit costs), and
/// target tau = 0.6 m. `seed` is accepted for reproducibility plumbing; the
/// scheme itself is deterministic. Throws on v < 2 or odd v, and on any
/// invariant violation of the resulting instance.
PpscInstance generate_paper_instance(CoverageModel model, int v, double bbar,
                                     double epsilon, uint64_t seed);

/// JSON persistence. Round trip is bit exact: load(save(I)) == I.
PpscInstance load_instance(const std::string& path);
void save_instance(const PpscInstance& instance, const std::string& path);

PpscInstance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const PpscInstance& instance);

/// A 0/1 selection of cover-sets.
using Selection = std::vector<uint8_t>;

std::vector<int> support(const Selection& x);
Selection selection_from_support(int num_sets, const std::vector<int>& sets);

} // namespace ppsc
