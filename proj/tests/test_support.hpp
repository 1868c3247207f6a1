#pragma once

// Shared test-only machinery: independent brute-force oracles and random
// generators. Everything here deliberately avoids the library's solution
// paths (DP recursions, bitset kernels, simplex) so it can serve as an
// oracle for them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ppsc/bnb.hpp"
#include "ppsc/instance.hpp"
#include "ppsc/linear_model.hpp"
#include "ppsc/oracle.hpp"
#include "ppsc/rng.hpp"
#include "ppsc/scenario.hpp"

namespace ppsc::testing {

/// P(at least tau successes) by enumerating all 2^m outcome profiles.
inline double brute_force_tail(const std::vector<double>& p, int tau) {
    const int m = static_cast<int>(p.size());
    double total = 0.0;
    for (uint32_t mask = 0; mask < (uint32_t(1) << m); ++mask) {
        int hits = 0;
        double w = 1.0;
        for (int i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                w *= p[i];
                ++hits;
            } else {
                w *= 1.0 - p[i];
            }
        }
        if (hits >= tau) total += w;
    }
    return total;
}

struct EnumeratedOptimum {
    bool feasible = false;
    double cost = std::numeric_limits<double>::infinity();
    Selection x;
};

/// Exhaustive 2^n search for the cheapest selection passing the DP oracle.
inline EnumeratedOptimum enumerate_optimum(const PpscInstance& inst,
                                           double tol = kFeasibilityTol) {
    EnumeratedOptimum best;
    const int n = inst.num_sets;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        Selection x(n, 0);
        double cost = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) {
                x[i] = 1;
                cost += inst.costs[i];
            }
        if (best.feasible && cost >= best.cost) continue;
        if (is_feasible(inst, x, tol).feasible) {
            best.feasible = true;
            best.cost = cost;
            best.x = x;
        }
    }
    return best;
}

/// Coverage count computed with plain adjacency scans, independent of the
/// bitset kernel.
inline int sigma_reference(const LiveArcScenario& scn, const std::vector<int>& sets) {
    std::vector<uint8_t> covered(scn.num_items, 0);
    for (int i : sets)
        for (int item : scn.out_items.at(i)) covered[item] = 1;
    int count = 0;
    for (uint8_t c : covered) count += c;
    return count;
}

struct MipEnumeration {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
    std::vector<double> values;
};

/// Exhaustive optimum of an all-binary model (rows + pooled cuts), with an
/// optional extra membership predicate playing the role of lazy constraints.
template <typename Predicate>
MipEnumeration enumerate_binary_model(const mip::LinearModel& model, Predicate keep) {
    const int n = static_cast<int>(model.vars.size());
    MipEnumeration best;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask) {
        std::vector<double> values(n, 0.0);
        for (int j = 0; j < n; ++j) values[j] = mask >> j & 1 ? 1.0 : 0.0;
        bool ok = true;
        for (const mip::Constraint& row : model.rows)
            if (mip::row_violation(row, values) > 1e-9) {
                ok = false;
                break;
            }
        if (ok)
            for (const mip::Constraint& row : model.pool)
                if (mip::row_violation(row, values) > 1e-9) {
                    ok = false;
                    break;
                }
        if (!ok || !keep(values)) continue;
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += model.objective[j] * values[j];
        if (!best.feasible || obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.values = values;
        }
    }
    return best;
}

inline MipEnumeration enumerate_binary_model(const mip::LinearModel& model) {
    return enumerate_binary_model(model, [](const std::vector<double>&) { return true; });
}

/// Random PPSC instance with integer costs. Weights respect the model
/// invariants (LT row sums strictly below one).
inline PpscInstance random_instance(Rng& rng, CoverageModel model, int max_sets,
                                    int max_items) {
    const int n = 1 + static_cast<int>(rng.next_below(max_sets));
    const int m = 1 + static_cast<int>(rng.next_below(max_items));
    std::vector<ArcWeight> weights;
    if (model == CoverageModel::IndependentCoverage) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                if (rng.next_double() < 0.75)
                    weights.push_back({i, j, 0.1 + 0.85 * rng.next_double()});
    } else {
        for (int j = 0; j < m; ++j) {
            std::vector<std::pair<int, double>> raw;
            for (int i = 0; i < n; ++i)
                if (rng.next_double() < 0.75) raw.emplace_back(i, 0.05 + rng.next_double());
            double sum = 0.0;
            for (const auto& [i, w] : raw) sum += w;
            if (raw.empty() || sum == 0.0) continue;
            const double target = 0.3 + 0.65 * rng.next_double();
            for (const auto& [i, w] : raw) weights.push_back({i, j, w * target / sum});
        }
    }
    std::vector<double> costs(n);
    for (int i = 0; i < n; ++i) costs[i] = 1.0 + static_cast<double>(rng.next_below(9));
    const int tau = 1 + static_cast<int>(rng.next_below(m));
    static const double kRisks[] = {0.05, 0.1, 0.2, 0.3, 0.5};
    const double epsilon = kRisks[rng.next_below(5)];
    return make_instance(model, n, m, std::move(costs), std::move(weights), tau, epsilon);
}

/// Random live-arc scenario (uniform arcs).
inline LiveArcScenario random_scenario(Rng& rng, int num_sets, int num_items,
                                       double density = 0.5) {
    std::vector<std::pair<int, int>> arcs;
    for (int i = 0; i < num_sets; ++i)
        for (int j = 0; j < num_items; ++j)
            if (rng.next_double() < density) arcs.emplace_back(i, j);
    return make_scenario(num_sets, num_items, arcs, 1.0);
}

/// Random all-binary integer-data model: a handful of rows with small
/// coefficients, costs in [-5, 5].
inline mip::LinearModel random_binary_model(Rng& rng, int max_vars = 10) {
    mip::LinearModel model;
    const int n = 1 + static_cast<int>(rng.next_below(max_vars));
    for (int j = 0; j < n; ++j)
        model.add_binary("b" + std::to_string(j),
                         static_cast<double>(rng.next_below(11)) - 5.0);
    const int rows = static_cast<int>(rng.next_below(7));
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < n; ++j) {
            const double c = static_cast<double>(rng.next_below(7)) - 3.0;
            if (c != 0.0) terms.emplace_back(j, c);
        }
        if (terms.empty()) continue;
        const mip::Relation rel =
            rng.next_below(3) == 0
                ? mip::Relation::Equal
                : (rng.next_below(2) ? mip::Relation::LessEqual
                                     : mip::Relation::GreaterEqual);
        model.add_row("r" + std::to_string(r), std::move(terms), rel,
                      static_cast<double>(rng.next_below(13)) - 4.0);
    }
    return model;
}

/// Number of affinely independent points in the list.
inline int affine_rank(std::vector<std::vector<double>> points) {
    if (points.empty()) return 0;
    const size_t dim = points[0].size();
    std::vector<std::vector<double>> diffs;
    for (size_t k = 1; k < points.size(); ++k) {
        std::vector<double> d(dim);
        for (size_t c = 0; c < dim; ++c) d[c] = points[k][c] - points[0][c];
        diffs.push_back(std::move(d));
    }
    int rank = 0;
    size_t col = 0;
    for (size_t r = 0; r < diffs.size() && col < dim; ++col) {
        size_t pivot = r;
        for (size_t k = r + 1; k < diffs.size(); ++k)
            if (std::abs(diffs[k][col]) > std::abs(diffs[pivot][col])) pivot = k;
        if (std::abs(diffs[pivot][col]) < 1e-7) continue;
        std::swap(diffs[r], diffs[pivot]);
        for (size_t k = 0; k < diffs.size(); ++k) {
            if (k == r) continue;
            const double f = diffs[k][col] / diffs[r][col];
            if (f == 0.0) continue;
            for (size_t c = col; c < dim; ++c) diffs[k][c] -= f * diffs[r][c];
        }
        ++rank;
        ++r;
    }
    return rank + 1;
}

/// Evaluates a theta-family cut at the lifted point (theta, x).
inline bool cut_holds_at(const mip::LinearCut& cut, int scenario_index, double theta,
                         const Selection& x, double tol = 1e-9) {
    double lhs = 0.0;
    for (const auto& [name, coef] : cut.coeffs) {
        if (name == "theta" + std::to_string(scenario_index))
            lhs += coef * theta;
        else if (name.rfind("x", 0) == 0)
            lhs += coef * (x.at(std::stoul(name.substr(1))) ? 1.0 : 0.0);
        else
            return false; // unexpected variable
    }
    switch (cut.rel) {
    case mip::Relation::LessEqual: return lhs <= cut.rhs + tol;
    case mip::Relation::GreaterEqual: return lhs >= cut.rhs - tol;
    default: return std::abs(lhs - cut.rhs) <= tol;
    }
}

/// Evaluates an x-space cut at a selection.
inline bool x_cut_holds_at(const mip::LinearCut& cut, const Selection& x,
                           double tol = 1e-9) {
    double lhs = 0.0;
    for (const auto& [name, coef] : cut.coeffs) {
        if (name.rfind("x", 0) != 0) return false;
        lhs += coef * (x.at(std::stoul(name.substr(1))) ? 1.0 : 0.0);
    }
    switch (cut.rel) {
    case mip::Relation::LessEqual: return lhs <= cut.rhs + tol;
    case mip::Relation::GreaterEqual: return lhs >= cut.rhs - tol;
    default: return std::abs(lhs - cut.rhs) <= tol;
    }
}

} // namespace ppsc::testing
