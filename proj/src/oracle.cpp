#include "ppsc/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "ppsc/rng.hpp"

namespace ppsc {

CoverageVector coverage_vector(const PpscInstance& inst, const Selection& x) {
    if (static_cast<int>(x.size()) != inst.num_sets)
        throw std::invalid_argument("selection size does not match instance");
    CoverageVector cv;
    cv.instance = &inst;
    cv.selection = x;
    cv.item_prob.assign(inst.num_items, 0.0);
    if (inst.model == CoverageModel::LinearThreshold) {
        for (int i = 0; i < inst.num_items; ++i) {
            double p = 0.0;
            for (const auto& [set, w] : inst.in_arcs[i])
                if (x[set]) p += w;
            cv.item_prob[i] = p;
        }
    } else {
        for (int i = 0; i < inst.num_items; ++i) {
            double miss = 1.0;
            for (const auto& [set, w] : inst.in_arcs[i])
                if (x[set]) miss *= 1.0 - w;
            cv.item_prob[i] = 1.0 - miss;
        }
    }
    return cv;
}

CoverageVector update_coverage(const CoverageVector& cv, int added_set) {
    const PpscInstance& inst = *cv.instance;
    if (added_set < 0 || added_set >= inst.num_sets)
        throw std::invalid_argument("added set index out of range");
    if (cv.selection[added_set])
        throw std::invalid_argument("set already selected");
    CoverageVector out = cv;
    out.selection[added_set] = 1;
    if (inst.model == CoverageModel::LinearThreshold) {
        for (const auto& [item, w] : inst.out_arcs[added_set]) out.item_prob[item] += w;
    } else {
        for (const auto& [item, w] : inst.out_arcs[added_set])
            out.item_prob[item] = 1.0 - (1.0 - out.item_prob[item]) * (1.0 - w);
    }
    return out;
}

double OracleTable::row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j <= i; ++j) s += at(i, j);
    return s;
}

double OracleTable::tail(int tau) const {
    if (tau < 0 || tau > items) throw std::invalid_argument("target outside [0, m]");
    double s = 0.0;
    for (int j = tau; j <= items; ++j) s += at(items, j);
    return s;
}

OracleTable build_table(const CoverageVector& cv) {
    const int m = static_cast<int>(cv.item_prob.size());
    OracleTable table;
    table.items = m;
    table.prob.assign(static_cast<size_t>(m + 1) * (m + 2) / 2, 0.0);
    table.prob[0] = 1.0; // empty prefix covers exactly zero items
    for (int i = 1; i <= m; ++i) {
        const double p = cv.item_prob[i - 1];
        const size_t row = static_cast<size_t>(i) * (i + 1) / 2;
        const size_t prev = static_cast<size_t>(i - 1) * i / 2;
        table.prob[row] = table.prob[prev] * (1.0 - p);
        for (int j = 1; j < i; ++j)
            table.prob[row + j] =
                table.prob[prev + j] * (1.0 - p) + table.prob[prev + j - 1] * p;
        table.prob[row + i] = table.prob[prev + i - 1] * p;
    }
    return table;
}

double tail_probability(const CoverageVector& cv, int tau) {
    return build_table(cv).tail(tau);
}

FeasibilityCheck is_feasible(const PpscInstance& inst, const Selection& x, double tol) {
    const double p = tail_probability(coverage_vector(inst, x), inst.tau);
    return {p >= 1.0 - inst.epsilon - tol, p};
}

namespace {

constexpr long kMcBlock = 1 << 14;

long simulate_block(const std::vector<double>& p, int tau, long count, Rng rng) {
    const int m = static_cast<int>(p.size());
    long hits = 0;
    for (long s = 0; s < count; ++s) {
        int covered = 0;
        for (int i = 0; i < m; ++i)
            covered += rng.next_double() < p[i];
        hits += covered >= tau;
    }
    return hits;
}

McEstimate finish(long hits, long samples) {
    const double est = static_cast<double>(hits) / static_cast<double>(samples);
    return {est, std::sqrt(est * (1.0 - est) / static_cast<double>(samples))};
}

} // namespace

McEstimate monte_carlo_estimate_serial(const PpscInstance& inst, const Selection& x,
                                       int tau, long samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    const CoverageVector cv = coverage_vector(inst, x);
    long hits = 0;
    const long blocks = (samples + kMcBlock - 1) / kMcBlock;
    for (long b = 0; b < blocks; ++b) {
        const long count = std::min<long>(kMcBlock, samples - b * kMcBlock);
        hits += simulate_block(cv.item_prob, tau, count, stream_rng(seed, b));
    }
    return finish(hits, samples);
}

McEstimate monte_carlo_estimate(const PpscInstance& inst, const Selection& x,
                                int tau, long samples, uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sample count must be positive");
    const CoverageVector cv = coverage_vector(inst, x);
    const long blocks = (samples + kMcBlock - 1) / kMcBlock;
    std::vector<long> block_hits(blocks, 0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < blocks; ++b) {
        const long count = std::min<long>(kMcBlock, samples - b * kMcBlock);
        block_hits[b] = simulate_block(cv.item_prob, tau, count, stream_rng(seed, b));
    }
    long hits = 0;
    for (long h : block_hits) hits += h;
    return finish(hits, samples);
}

} // namespace ppsc
