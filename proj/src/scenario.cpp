#include "ppsc/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "ppsc/rng.hpp"

namespace ppsc {

namespace {

int mask_words(int num_items) { return (num_items + 63) / 64; }

int popcount_words(const std::vector<uint64_t>& words) {
    int c = 0;
    for (uint64_t w : words) c += std::popcount(w);
    return c;
}

LiveArcScenario sample_one(const PpscInstance& inst, double probability, Rng rng) {
    LiveArcScenario scn;
    scn.num_sets = inst.num_sets;
    scn.num_items = inst.num_items;
    scn.probability = probability;
    scn.out_items.assign(inst.num_sets, {});
    scn.in_sets.assign(inst.num_items, {});
    scn.cover.assign(inst.num_sets, std::vector<uint64_t>(mask_words(inst.num_items), 0));
    if (inst.model == CoverageModel::IndependentCoverage) {
        for (int i = 0; i < inst.num_sets; ++i)
            for (const auto& [item, w] : inst.out_arcs[i])
                if (rng.next_double() < w) {
                    scn.out_items[i].push_back(item);
                    scn.in_sets[item].push_back(i);
                    scn.cover[i][item / 64] |= uint64_t(1) << (item % 64);
                }
    } else {
        // Each item draws one incoming arc with the arc weights as
        // probabilities; the leftover mass draws none.
        for (int j = 0; j < inst.num_items; ++j) {
            const double u = rng.next_double();
            double acc = 0.0;
            for (const auto& [set, w] : inst.in_arcs[j]) {
                acc += w;
                if (u < acc) {
                    scn.out_items[set].push_back(j);
                    scn.in_sets[j].push_back(set);
                    scn.cover[set][j / 64] |= uint64_t(1) << (j % 64);
                    break;
                }
            }
        }
        for (auto& items : scn.out_items) std::sort(items.begin(), items.end());
    }
    return scn;
}

} // namespace

std::vector<std::pair<int, int>> LiveArcScenario::arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < num_sets; ++i)
        for (int item : out_items[i]) out.emplace_back(i, item);
    return out;
}

LiveArcScenario make_scenario(int num_sets, int num_items,
                              const std::vector<std::pair<int, int>>& arcs,
                              double probability) {
    LiveArcScenario scn;
    scn.num_sets = num_sets;
    scn.num_items = num_items;
    scn.probability = probability;
    scn.out_items.assign(num_sets, {});
    scn.in_sets.assign(num_items, {});
    scn.cover.assign(num_sets, std::vector<uint64_t>(mask_words(num_items), 0));
    for (const auto& [set, item] : arcs) {
        if (set < 0 || set >= num_sets || item < 0 || item >= num_items)
            throw std::invalid_argument("scenario arc out of range");
        scn.out_items[set].push_back(item);
        scn.in_sets[item].push_back(set);
        scn.cover[set][item / 64] |= uint64_t(1) << (item % 64);
    }
    for (auto& items : scn.out_items) std::sort(items.begin(), items.end());
    for (auto& sets : scn.in_sets) std::sort(sets.begin(), sets.end());
    return scn;
}

ScenarioSet sample_scenarios_serial(const PpscInstance& inst, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("scenario count must be positive");
    ScenarioSet set;
    set.scenarios.reserve(count);
    for (int k = 0; k < count; ++k)
        set.scenarios.push_back(sample_one(inst, 1.0 / count, stream_rng(seed, k)));
    return set;
}

ScenarioSet sample_scenarios(const PpscInstance& inst, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("scenario count must be positive");
    ScenarioSet set;
    set.scenarios.resize(count);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < count; ++k)
        set.scenarios[k] = sample_one(inst, 1.0 / count, stream_rng(seed, k));
    return set;
}

int sigma(const LiveArcScenario& scn, const std::vector<int>& sets) {
    std::vector<uint64_t> acc(mask_words(scn.num_items), 0);
    for (int i : sets) {
        const auto& mask = scn.cover.at(i);
        for (size_t w = 0; w < acc.size(); ++w) acc[w] |= mask[w];
    }
    return popcount_words(acc);
}

int marginal_gain(const LiveArcScenario& scn, const std::vector<int>& sets, int j) {
    for (int i : sets)
        if (i == j) throw std::invalid_argument("set already in the support");
    std::vector<uint64_t> acc(mask_words(scn.num_items), 0);
    for (int i : sets) {
        const auto& mask = scn.cover.at(i);
        for (size_t w = 0; w < acc.size(); ++w) acc[w] |= mask[w];
    }
    const int base = popcount_words(acc);
    const auto& mask = scn.cover.at(j);
    for (size_t w = 0; w < acc.size(); ++w) acc[w] |= mask[w];
    return popcount_words(acc) - base;
}

std::vector<int> common_reach(const LiveArcScenario& scn, const std::vector<int>& b_set,
                              const std::vector<int>& n_set) {
    for (int b : b_set)
        for (int n : n_set)
            if (b == n) throw std::invalid_argument("B and N overlap");
    std::vector<uint64_t> acc(mask_words(scn.num_items), ~uint64_t(0));
    for (int i : b_set) {
        const auto& mask = scn.cover.at(i);
        for (size_t w = 0; w < acc.size(); ++w) acc[w] &= mask[w];
    }
    for (int i : n_set) {
        const auto& mask = scn.cover.at(i);
        for (size_t w = 0; w < acc.size(); ++w) acc[w] &= ~mask[w];
    }
    std::vector<int> items;
    for (int j = 0; j < scn.num_items; ++j)
        if (acc[j / 64] >> (j % 64) & 1) items.push_back(j);
    return items;
}

int eta(const LiveArcScenario& scn, int k) {
    int count = 0;
    for (int item : scn.out_items.at(k))
        if (scn.in_sets[item].size() == 1) ++count;
    return count;
}

std::vector<int> sigma_batch_serial(const ScenarioSet& set, const std::vector<int>& sets) {
    std::vector<int> out(set.scenarios.size());
    for (size_t k = 0; k < set.scenarios.size(); ++k) out[k] = sigma(set.scenarios[k], sets);
    return out;
}

std::vector<int> sigma_batch(const ScenarioSet& set, const std::vector<int>& sets) {
    std::vector<int> out(set.scenarios.size());
    const int count = static_cast<int>(set.scenarios.size());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < count; ++k) out[k] = sigma(set.scenarios[k], sets);
    return out;
}

double empirical_prob(const ScenarioSet& set, const Selection& x, int tau) {
    const std::vector<int> sets = support(x);
    const std::vector<int> counts = sigma_batch(set, sets);
    double p = 0.0;
    for (size_t k = 0; k < set.scenarios.size(); ++k)
        if (counts[k] >= tau) p += set.scenarios[k].probability;
    return p;
}

void save_scenarios(const ScenarioSet& set, const std::string& path) {
    nlohmann::json doc;
    doc["count"] = set.size();
    auto weights = nlohmann::json::array();
    auto arcs = nlohmann::json::array();
    for (const LiveArcScenario& scn : set.scenarios) {
        weights.push_back(scn.probability);
        auto list = nlohmann::json::array();
        for (const auto& [i, j] : scn.arcs()) list.push_back(nlohmann::json::array({i, j}));
        arcs.push_back(std::move(list));
    }
    doc["weights"] = std::move(weights);
    doc["arcs"] = std::move(arcs);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << doc.dump() << '\n';
}

ScenarioSet load_scenarios(const std::string& path, int num_sets, int num_items) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed scenario document: ") + e.what());
    }
    ScenarioSet set;
    try {
        const int count = doc.at("count").get<int>();
        const auto weights = doc.at("weights").get<std::vector<double>>();
        const auto& arcs = doc.at("arcs");
        if (static_cast<int>(weights.size()) != count ||
            static_cast<int>(arcs.size()) != count)
            throw std::runtime_error("scenario count mismatch");
        double total = 0.0;
        for (int k = 0; k < count; ++k) {
            std::vector<std::pair<int, int>> list;
            for (const auto& arc : arcs[k])
                list.emplace_back(arc[0].get<int>(), arc[1].get<int>());
            set.scenarios.push_back(make_scenario(num_sets, num_items, list, weights[k]));
            total += weights[k];
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw std::runtime_error("scenario weights do not sum to one");
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("scenario schema violation: ") + e.what());
    }
    return set;
}

} // namespace ppsc
