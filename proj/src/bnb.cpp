#include "ppsc/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ppsc::mip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;
constexpr long kDiveBudget = 1000; // nodes before a fruitless dive falls back

struct Node {
    double bound = -kInf;
    long id = 0;
    std::vector<double> lower, upper;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;
    }
};

// Open-node storage: optionally a LIFO dive phase until the first incumbent,
// then a best-bound heap. Both phases are deterministic.
struct OpenSet {
    bool diving = false;
    std::vector<Node> stack;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;

    bool empty() const { return stack.empty() && heap.empty(); }

    void push(Node n) {
        if (diving)
            stack.push_back(std::move(n));
        else
            heap.push(std::move(n));
    }

    Node pop() {
        if (diving) {
            Node n = std::move(stack.back());
            stack.pop_back();
            return n;
        }
        Node n = heap.top();
        heap.pop();
        return n;
    }

    void leave_dive() {
        diving = false;
        for (Node& n : stack) heap.push(std::move(n));
        stack.clear();
    }

    double min_bound() const {
        double bound = kInf;
        for (const Node& n : stack) bound = std::min(bound, n.bound);
        if (!heap.empty()) bound = std::min(bound, heap.top().bound);
        return bound;
    }
};

int most_fractional_binary(const LinearModel& model, const std::vector<double>& values) {
    int best = -1;
    double best_dist = kIntTol;
    int best_priority = 0;
    for (size_t j = 0; j < model.vars.size(); ++j) {
        if (model.vars[j].kind != VarKind::Binary) continue;
        const double dist = std::abs(values[j] - std::round(values[j]));
        if (dist <= kIntTol) continue;
        const int priority =
            j < model.branch_priority.size() ? model.branch_priority[j] : 0;
        if (best >= 0 && priority < best_priority) continue;
        if (best >= 0 && priority == best_priority && dist <= best_dist) continue;
        best = static_cast<int>(j);
        best_dist = dist;
        best_priority = priority;
    }
    return best;
}

} // namespace

SolveOutcome solve_bnb(LinearModel& model, const LazyCallback& callback,
                       const BnbLimits& limits, const LpOptions& lp_opts) {
    validate_model(model);
    const auto start = std::chrono::steady_clock::now();
    const auto out_of_time = [&] {
        if (limits.time_limit_s < 0) return false;
        const std::chrono::duration<double> used = std::chrono::steady_clock::now() - start;
        return used.count() > limits.time_limit_s;
    };

    const size_t nv = model.vars.size();
    bool has_continuous = false;
    for (const Variable& v : model.vars)
        if (v.kind == VarKind::Continuous) has_continuous = true;

    Node root;
    root.lower.resize(nv);
    root.upper.resize(nv);
    for (size_t j = 0; j < nv; ++j) {
        root.lower[j] = model.vars[j].lower;
        root.upper[j] = model.vars[j].upper;
    }

    OpenSet open;
    open.diving = model.dive_first;
    open.push(std::move(root));
    long next_id = 1;

    SolveOutcome out;
    bool found = false;
    double incumbent_obj = kInf;
    std::vector<double> incumbent;
    bool hit_limit = false;

    while (!open.empty()) {
        if (out_of_time() || (limits.max_nodes >= 0 && out.nodes >= limits.max_nodes)) {
            hit_limit = true;
            break;
        }
        if (open.diving && out.nodes > kDiveBudget) open.leave_dive();
        Node node = open.pop();
        if (found && node.bound >= incumbent_obj - 1e-9) {
            if (open.diving) continue;
            break; // best-bound order: everything left is no better
        }
        ++out.nodes;

        LpSolution sol = solve_lp_bounded(model, node.lower, node.upper, lp_opts);
        out.lp_iterations += sol.iterations;
        if (sol.status == LpStatus::Infeasible) continue;
        if (sol.status == LpStatus::Unbounded) {
            out.status = MipStatus::Unbounded;
            out.best_bound = -kInf;
            return out;
        }
        if (found && sol.objective >= incumbent_obj - 1e-9) continue;

        const int branch_var = most_fractional_binary(model, sol.values);
        if (branch_var >= 0) {
            Node down;
            down.lower = node.lower;
            down.upper = node.upper;
            down.bound = sol.objective;
            down.upper[branch_var] = 0.0;
            down.id = next_id++;
            Node up;
            up.lower = std::move(node.lower);
            up.upper = std::move(node.upper);
            up.bound = sol.objective;
            up.lower[branch_var] = 1.0;
            up.id = next_id++;
            open.push(std::move(down));
            open.push(std::move(up)); // dive explores the one-branch first
            continue;
        }

        // Integer-feasible point. Under best-bound order, keep it strictly
        // ordered: if installed cuts pushed this node's value above another
        // open node, re-queue so candidates reach the callback in
        // nondecreasing objective order.
        if (!open.diving && !open.heap.empty() &&
            sol.objective > open.heap.top().bound + 1e-9) {
            node.bound = sol.objective;
            node.id = next_id++;
            open.push(std::move(node));
            continue;
        }

        std::vector<double> candidate = sol.values;
        for (size_t j = 0; j < nv; ++j)
            if (model.vars[j].kind == VarKind::Binary)
                candidate[j] = std::round(candidate[j]);
        bool rejected = false;
        if (callback) {
            std::vector<LinearCut> cuts = callback(candidate);
            for (const LinearCut& cut : cuts) {
                if (cut_violation(model, cut, candidate) > kCutViolationTol)
                    rejected = true;
                if (add_cut(model, cut)) {
                    ++out.cuts_added;
                    out.generated_cuts.push_back(cut);
                }
            }
        }
        if (rejected) {
            // Re-solve rather than discard: the node returns to the queue and
            // faces the enlarged cut pool on its next visit.
            node.bound = sol.objective;
            node.id = next_id++;
            open.push(std::move(node));
            continue;
        }
        double obj = 0.0;
        for (size_t j = 0; j < nv; ++j) obj += model.objective[j] * candidate[j];
        if (!found || obj < incumbent_obj) {
            found = true;
            incumbent_obj = obj;
            incumbent = std::move(candidate);
        }
        if (open.diving) open.leave_dive();
    }

    if (hit_limit) {
        out.status = MipStatus::Limit;
        const double open_bound = open.min_bound();
        double bound = found ? std::min(incumbent_obj, open_bound) : open_bound;
        out.best_bound = bound;
        if (found) {
            out.values = std::move(incumbent);
            out.objective = incumbent_obj;
        }
        return out;
    }

    if (!found) {
        out.status = MipStatus::Infeasible;
        out.best_bound = kInf;
        return out;
    }

    // Cuts installed after the incumbent was accepted may have tightened the
    // continuous completion it was stored with; recompute it at the fixed
    // binary assignment. Valid lazy cuts never change the completion value.
    if (has_continuous && out.cuts_added > 0) {
        std::vector<double> lower(nv), upper(nv);
        for (size_t j = 0; j < nv; ++j) {
            if (model.vars[j].kind == VarKind::Binary)
                lower[j] = upper[j] = incumbent[j];
            else {
                lower[j] = model.vars[j].lower;
                upper[j] = model.vars[j].upper;
            }
        }
        LpSolution repair = solve_lp_bounded(model, lower, upper, lp_opts);
        out.lp_iterations += repair.iterations;
        if (repair.status != LpStatus::Optimal)
            throw std::runtime_error(
                "lazy cuts made an accepted candidate's completion infeasible");
        if (std::abs(repair.objective - incumbent_obj) > 1e-6)
            throw std::runtime_error(
                "lazy cuts changed an accepted candidate's completion value");
        for (size_t j = 0; j < nv; ++j)
            if (model.vars[j].kind == VarKind::Continuous)
                incumbent[j] = repair.values[j];
    }

    out.status = MipStatus::Optimal;
    out.values = std::move(incumbent);
    out.objective = incumbent_obj;
    out.best_bound = incumbent_obj;
    // Optimal incumbents satisfy every row and pooled cut.
    for (const Constraint& row : model.rows)
        if (row_violation(row, out.values) > 1e-6)
            throw std::runtime_error("incumbent violates row " + row.name);
    for (const Constraint& row : model.pool)
        if (row_violation(row, out.values) > 1e-6)
            throw std::runtime_error("incumbent violates pooled cut " + row.name);
    return out;
}

} // namespace ppsc::mip
