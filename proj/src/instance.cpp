#include "ppsc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ppsc {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

} // namespace

std::string to_string(CoverageModel model) {
    return model == CoverageModel::IndependentCoverage ? "independent_coverage"
                                                       : "linear_threshold";
}

CoverageModel coverage_model_from_string(const std::string& tag) {
    if (tag == "independent_coverage") return CoverageModel::IndependentCoverage;
    if (tag == "linear_threshold") return CoverageModel::LinearThreshold;
    fail("unknown coverage model tag: " + tag);
}

PpscInstance& validate(PpscInstance& inst) {
    if (inst.num_sets <= 0) fail("instance needs at least one cover-set");
    if (inst.num_items <= 0) fail("instance needs at least one item");
    if (static_cast<int>(inst.costs.size()) != inst.num_sets)
        fail("cost vector size does not match cover-set count");
    for (int i = 0; i < inst.num_sets; ++i)
        if (!(inst.costs[i] >= 0.0)) fail("negative cost at set " + std::to_string(i));
    if (inst.tau < 0) fail("target is negative");
    if (inst.tau > inst.num_items) fail("target exceeds item count");
    if (!(inst.epsilon >= 0.0 && inst.epsilon <= 1.0)) fail("risk level outside [0,1]");

    std::sort(inst.weights.begin(), inst.weights.end(),
              [](const ArcWeight& a, const ArcWeight& b) {
                  return std::pair(a.set, a.item) < std::pair(b.set, b.item);
              });
    inst.out_arcs.assign(inst.num_sets, {});
    inst.in_arcs.assign(inst.num_items, {});
    const ArcWeight* prev = nullptr;
    for (const ArcWeight& arc : inst.weights) {
        if (arc.set < 0 || arc.set >= inst.num_sets)
            fail("arc references unknown set " + std::to_string(arc.set));
        if (arc.item < 0 || arc.item >= inst.num_items)
            fail("arc references unknown item " + std::to_string(arc.item));
        if (prev && prev->set == arc.set && prev->item == arc.item)
            fail("duplicate arc (" + std::to_string(arc.set) + "," + std::to_string(arc.item) + ")");
        if (!(arc.weight >= 0.0 && arc.weight <= 1.0))
            fail("weight out of range on arc (" + std::to_string(arc.set) + "," +
                 std::to_string(arc.item) + ")");
        inst.out_arcs[arc.set].emplace_back(arc.item, arc.weight);
        inst.in_arcs[arc.item].emplace_back(arc.set, arc.weight);
        prev = &arc;
    }

    if (inst.model == CoverageModel::LinearThreshold) {
        for (int j = 0; j < inst.num_items; ++j) {
            double sum = 0.0;
            for (const auto& [set, w] : inst.in_arcs[j]) sum += w;
            if (sum - 1.0 > 1e-12)
                fail("LT row-sum exceeds 1 at item " + std::to_string(j));
        }
    }
    return inst;
}

PpscInstance make_instance(CoverageModel model, int num_sets, int num_items,
                           std::vector<double> costs, std::vector<ArcWeight> weights,
                           int tau, double epsilon) {
    PpscInstance inst;
    inst.model = model;
    inst.num_sets = num_sets;
    inst.num_items = num_items;
    inst.costs = std::move(costs);
    inst.weights = std::move(weights);
    inst.tau = tau;
    inst.epsilon = epsilon;
    validate(inst);
    return inst;
}

PpscInstance generate_paper_instance(CoverageModel model, int v, double bbar,
                                     double epsilon, uint64_t /*seed*/) {
    if (v < 2) fail("node count must be at least 2");
    if (v % 2 != 0) fail("node count must be even");
    const int n = v / 2;
    const int m = v / 2;
    const int head = std::min(10, n); // high-coverage group
    const int tail = n - head;

    std::vector<double> costs(n, 1.0);
    if (bbar != 1.0) {
        for (int i = 1; i <= head; ++i) costs[i - 1] = i * bbar / head;
        // 0-based tail index keeps costs nonnegative and decreasing.
        for (int i = head + 1; i <= n; ++i) costs[i - 1] = (n - i) * bbar / (2.0 * tail);
    }

    std::vector<ArcWeight> weights;
    weights.reserve(static_cast<size_t>(n) * m);
    double tail_sum = 0.0;
    for (int t = 1; t <= head; ++t) tail_sum += t / 100.0;
    for (int i = 1; i <= n; ++i) {
        double a;
        if (model == CoverageModel::IndependentCoverage)
            a = i <= head ? 0.18 + i * 0.04 / head : (i - head) * 0.04 / tail;
        else
            a = i <= head ? 0.9 / head - i / (100.0 * head) : tail_sum / tail;
        for (int j = 0; j < m; ++j) weights.push_back({i - 1, j, a});
    }

    const int tau = static_cast<int>(std::llround(0.6 * m));
    return make_instance(model, n, m, std::move(costs), std::move(weights), tau, epsilon);
}

std::string instance_to_json_text(const PpscInstance& inst) {
    nlohmann::json doc;
    doc["model"] = to_string(inst.model);
    doc["n"] = inst.num_sets;
    doc["m"] = inst.num_items;
    doc["costs"] = inst.costs;
    auto arcs = nlohmann::json::array();
    for (const ArcWeight& arc : inst.weights)
        arcs.push_back(nlohmann::json::array({arc.set, arc.item, arc.weight}));
    doc["weights"] = std::move(arcs);
    doc["tau"] = inst.tau;
    doc["epsilon"] = inst.epsilon;
    return doc.dump(2);
}

PpscInstance instance_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed instance document: ") + e.what());
    }
    PpscInstance inst;
    try {
        inst.model = coverage_model_from_string(doc.at("model").get<std::string>());
        inst.num_sets = doc.at("n").get<int>();
        inst.num_items = doc.at("m").get<int>();
        inst.costs = doc.at("costs").get<std::vector<double>>();
        for (const auto& triple : doc.at("weights")) {
            if (!triple.is_array() || triple.size() != 3)
                throw std::runtime_error("weight entries must be [set, item, weight] triples");
            inst.weights.push_back({triple[0].get<int>(), triple[1].get<int>(),
                                    triple[2].get<double>()});
        }
        inst.tau = doc.at("tau").get<int>();
        inst.epsilon = doc.at("epsilon").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("instance schema violation: ") + e.what());
    }
    validate(inst);
    return inst;
}

PpscInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json_text(buf.str());
}

void save_instance(const PpscInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path);
    out << instance_to_json_text(inst) << '\n';
}

std::vector<int> support(const Selection& x) {
    std::vector<int> sets;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (x[i]) sets.push_back(i);
    return sets;
}

Selection selection_from_support(int num_sets, const std::vector<int>& sets) {
    Selection x(num_sets, 0);
    for (int i : sets) x.at(i) = 1;
    return x;
}

} // namespace ppsc
