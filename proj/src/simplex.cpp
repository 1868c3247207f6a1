#include "ppsc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ppsc::mip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRateTol = 1e-9;   // minimum magnitude for a ratio-test entry
constexpr double kCostTol = 1e-9;   // reduced-cost optimality tolerance
constexpr double kDriftTol = 1e-7;  // phase-1 residual treated as zero

enum : int8_t { AtLower = 0, AtUpper = 1, Basic = 2 };

struct Tableau {
    int rows = 0;
    int cols = 0;
    int first_artificial = 0; // columns >= this never price in
    std::vector<double> t;    // rows x cols
    std::vector<double> xb;   // value of the basic variable per row
    std::vector<int> basic;   // column basic in each row
    std::vector<int8_t> state;
    std::vector<double> lo, hi;
    std::vector<double> cost; // phase-2 costs
    std::vector<double> d;    // reduced costs of the active phase
    long pivots = 0;
    bool parallel = true;

    double* row(int i) { return t.data() + static_cast<size_t>(i) * cols; }
};

void eliminate_column(Tableau& tb, int r, int q) {
    double* pr = tb.row(r);
    const double piv = pr[q];
    const double inv = 1.0 / piv;
    for (int j = 0; j < tb.cols; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    const bool parallel = tb.parallel && static_cast<long>(tb.rows) * tb.cols > 65536;
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < tb.rows; ++i) {
        if (i == r) continue;
        double* pi = tb.row(i);
        const double f = pi[q];
        if (f == 0.0) continue;
        for (int j = 0; j < tb.cols; ++j) pi[j] -= f * pr[j];
        pi[q] = 0.0;
    }
    const double f = tb.d[q];
    if (f != 0.0) {
        for (int j = 0; j < tb.cols; ++j) tb.d[j] -= f * pr[j];
        tb.d[q] = 0.0;
    }
}

double nonbasic_value(const Tableau& tb, int j) {
    return tb.state[j] == AtUpper ? tb.hi[j] : tb.lo[j];
}

void reset_reduced_costs(Tableau& tb, const std::vector<double>& phase_cost) {
    tb.d = phase_cost;
    for (int i = 0; i < tb.rows; ++i) {
        const double cb = phase_cost[tb.basic[i]];
        if (cb == 0.0) continue;
        const double* pi = tb.row(i);
        for (int j = 0; j < tb.cols; ++j) tb.d[j] -= cb * pi[j];
    }
}

int pick_entering(const Tableau& tb, bool bland) {
    int best = -1;
    double best_viol = kCostTol;
    for (int j = 0; j < tb.first_artificial; ++j) {
        if (tb.state[j] == Basic) continue;
        if (tb.hi[j] - tb.lo[j] < 1e-12) continue; // fixed
        const double viol = tb.state[j] == AtLower ? -tb.d[j] : tb.d[j];
        if (viol <= best_viol) continue;
        if (bland) return j;
        best = j;
        best_viol = viol;
    }
    return best;
}

// One simplex phase; returns true when optimal for the phase cost, throws on
// pivot-limit exhaustion, and returns false only for unbounded (phase 2).
bool run_phase(Tableau& tb, const std::vector<double>& phase_cost, long bland_after,
               long max_pivots) {
    reset_reduced_costs(tb, phase_cost);
    long since_reset = 0;
    while (true) {
        const bool bland = tb.pivots > bland_after;
        const int q = pick_entering(tb, bland);
        if (q < 0) return true;
        const int dir = tb.state[q] == AtLower ? 1 : -1;

        // Ratio test: largest step before a basic variable hits a bound or the
        // entering variable flips to its other bound.
        double best_t = tb.hi[q] - tb.lo[q]; // may be inf
        int leave_row = -1;
        bool leave_at_upper = false;
        double leave_rate = 0.0;
        for (int i = 0; i < tb.rows; ++i) {
            const double rate = dir * tb.row(i)[q];
            double cand;
            bool at_upper;
            const int bv = tb.basic[i];
            if (rate > kRateTol) {
                cand = (tb.xb[i] - tb.lo[bv]) / rate;
                at_upper = false;
            } else if (rate < -kRateTol) {
                if (tb.hi[bv] == kInf) continue;
                cand = (tb.hi[bv] - tb.xb[i]) / (-rate);
                at_upper = true;
            } else {
                continue;
            }
            if (cand < 0.0) cand = 0.0;
            bool take;
            if (leave_row < 0)
                take = cand <= best_t; // beats or ties the bound-flip limit
            else if (cand < best_t - 1e-12)
                take = true;
            else if (cand < best_t + 1e-12)
                take = bland ? bv < tb.basic[leave_row]
                             : std::abs(rate) > std::abs(leave_rate);
            else
                take = false;
            if (take) {
                best_t = cand;
                leave_row = i;
                leave_at_upper = at_upper;
                leave_rate = rate;
            }
        }

        if (leave_row < 0) {
            if (tb.hi[q] == kInf || tb.lo[q] == -kInf) return false; // unbounded ray
            // Bound flip: the entering variable crosses to its other bound.
            const double t = tb.hi[q] - tb.lo[q];
            for (int i = 0; i < tb.rows; ++i) tb.xb[i] -= dir * t * tb.row(i)[q];
            tb.state[q] = tb.state[q] == AtLower ? AtUpper : AtLower;
        } else {
            const double t = best_t;
            for (int i = 0; i < tb.rows; ++i) tb.xb[i] -= dir * t * tb.row(i)[q];
            const int bv = tb.basic[leave_row];
            tb.state[bv] = leave_at_upper ? AtUpper : AtLower;
            tb.xb[leave_row] = dir > 0 ? tb.lo[q] + t : tb.hi[q] - t;
            // Snap the leaving variable exactly onto its bound.
            eliminate_column(tb, leave_row, q);
            tb.basic[leave_row] = q;
            tb.state[q] = Basic;
        }
        ++tb.pivots;
        if (tb.pivots > max_pivots)
            throw std::runtime_error("simplex pivot limit exceeded (numerical failure?)");
        if (++since_reset >= 256) {
            reset_reduced_costs(tb, phase_cost);
            since_reset = 0;
        }
    }
}

} // namespace

namespace {

// Dense solve over the model rows plus an explicit subset of pool cuts.
LpSolution solve_dense(const LinearModel& model, const std::vector<double>& lower,
                       const std::vector<double>& upper,
                       const std::vector<int>& active_pool, const LpOptions& opts) {
    const int nv = static_cast<int>(model.vars.size());
    const int nr = static_cast<int>(model.rows.size() + active_pool.size());
    auto row_at = [&](int i) -> const Constraint& {
        return i < static_cast<int>(model.rows.size())
                   ? model.rows[i]
                   : model.pool[active_pool[i - model.rows.size()]];
    };

    int n_slack = 0;
    for (int i = 0; i < nr; ++i)
        if (row_at(i).rel != Relation::Equal) ++n_slack;

    Tableau tb;
    tb.rows = nr;
    tb.parallel = opts.parallel_pivots;
    const int slack0 = nv;
    tb.first_artificial = nv + n_slack;
    // Worst case one artificial per row.
    const int max_cols = nv + n_slack + nr;
    tb.cols = max_cols;
    tb.t.assign(static_cast<size_t>(nr) * max_cols, 0.0);
    tb.lo.assign(max_cols, 0.0);
    tb.hi.assign(max_cols, kInf);
    tb.cost.assign(max_cols, 0.0);
    tb.state.assign(max_cols, AtLower);
    for (int j = 0; j < nv; ++j) {
        tb.lo[j] = lower[j];
        tb.hi[j] = upper[j];
        tb.cost[j] = model.objective[j];
        if (!std::isfinite(tb.lo[j]))
            throw std::invalid_argument("variable " + model.vars[j].name +
                                        " needs a finite lower bound");
        if (tb.lo[j] > tb.hi[j] + 1e-12) return {LpStatus::Infeasible, {}, 0.0, 0};
        if (tb.lo[j] > tb.hi[j]) tb.hi[j] = tb.lo[j];
    }

    tb.basic.assign(nr, -1);
    tb.xb.assign(nr, 0.0);
    int next_slack = slack0;
    int next_art = tb.first_artificial;
    std::vector<double> phase1_cost(max_cols, 0.0);
    bool need_phase1 = false;

    for (int i = 0; i < nr; ++i) {
        const Constraint& c = row_at(i);
        double* pi = tb.row(i);
        for (const auto& [j, coef] : c.terms) pi[j] += coef;
        double residual = c.rhs;
        for (int j = 0; j < nv; ++j)
            if (pi[j] != 0.0) residual -= pi[j] * nonbasic_value(tb, j);
        int slack = -1;
        double slack_coef = 0.0;
        if (c.rel == Relation::LessEqual) {
            slack = next_slack++;
            slack_coef = 1.0;
        } else if (c.rel == Relation::GreaterEqual) {
            slack = next_slack++;
            slack_coef = -1.0;
        }
        if (slack >= 0) pi[slack] = slack_coef;
        const double slack_value = slack >= 0 ? residual / slack_coef : -1.0;
        if (slack >= 0 && slack_value >= 0.0) {
            if (slack_coef < 0.0)
                for (int j = 0; j < tb.cols; ++j) pi[j] = -pi[j];
            tb.basic[i] = slack;
            tb.xb[i] = slack_value;
            tb.state[slack] = Basic;
        } else {
            const int art = next_art++;
            const double sign = residual >= 0.0 ? 1.0 : -1.0;
            if (sign < 0.0)
                for (int j = 0; j < tb.cols; ++j) pi[j] = -pi[j];
            pi[art] = 1.0;
            tb.basic[i] = art;
            tb.xb[i] = std::abs(residual);
            tb.state[art] = Basic;
            phase1_cost[art] = 1.0;
            need_phase1 = true;
        }
    }

    const long bland_after = 5L * (nr + tb.cols) + 1000;
    const long max_pivots = 200L * (nr + tb.cols) + 20000;

    if (need_phase1) {
        if (!run_phase(tb, phase1_cost, bland_after, max_pivots))
            throw std::runtime_error("phase-1 subproblem reported unbounded");
        double infeas = 0.0;
        for (int i = 0; i < nr; ++i)
            if (tb.basic[i] >= tb.first_artificial) infeas += tb.xb[i];
        if (infeas > kDriftTol) return {LpStatus::Infeasible, {}, 0.0, tb.pivots};
        // Drive leftover artificials out of the basis where a real pivot
        // exists; redundant rows keep a fixed artificial at zero.
        for (int i = 0; i < nr; ++i) {
            if (tb.basic[i] < tb.first_artificial) continue;
            double* pi = tb.row(i);
            int q = -1;
            double best = 1e-7;
            for (int j = 0; j < tb.first_artificial; ++j)
                if (std::abs(pi[j]) > best) {
                    best = std::abs(pi[j]);
                    q = j;
                }
            if (q < 0) continue;
            const int art = tb.basic[i];
            const double entering_value = tb.state[q] == AtUpper ? tb.hi[q] : tb.lo[q];
            const double residual_value = tb.xb[i] / pi[q]; // leftover phase-1 drift
            eliminate_column(tb, i, q);
            tb.basic[i] = q;
            tb.state[q] = Basic;
            tb.xb[i] = entering_value + residual_value;
            tb.state[art] = AtLower;
        }
        for (int j = tb.first_artificial; j < tb.cols; ++j) {
            tb.lo[j] = tb.hi[j] = 0.0;
            if (tb.state[j] != Basic) tb.state[j] = AtLower;
        }
    }

    if (!run_phase(tb, tb.cost, bland_after, max_pivots)) {
        return {LpStatus::Unbounded, {}, 0.0, tb.pivots};
    }

    // Assemble and verify the solution.
    std::vector<double> full(tb.cols, 0.0);
    for (int j = 0; j < tb.cols; ++j)
        if (tb.state[j] != Basic) full[j] = nonbasic_value(tb, j);
    for (int i = 0; i < nr; ++i) full[tb.basic[i]] = tb.xb[i];

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.iterations = tb.pivots;
    sol.values.assign(full.begin(), full.begin() + nv);
    for (int j = 0; j < nv; ++j) {
        // Clamp roundoff dust onto the box.
        sol.values[j] = std::min(std::max(sol.values[j], tb.lo[j]), tb.hi[j]);
        sol.objective += model.objective[j] * sol.values[j];
    }
    for (int i = 0; i < nr; ++i) {
        const double v = row_violation(row_at(i), sol.values);
        if (v > 1e-6)
            throw std::runtime_error("LP verification failed on row " + row_at(i).name);
    }
    return sol;
}

} // namespace

LpSolution solve_lp_bounded(const LinearModel& model, const std::vector<double>& lower,
                            const std::vector<double>& upper, const LpOptions& opts) {
    // Pool cuts enter the tableau lazily: at a vertex only a handful can
    // bind, and cut-generation masters accumulate thousands. Rounds are
    // deterministic, so the final basis (and solution) is too.
    std::vector<int> active;
    std::vector<uint8_t> is_active(model.pool.size(), 0);
    long iterations = 0;
    bool activated_everything = false;
    while (true) {
        LpSolution sol = solve_dense(model, lower, upper, active, opts);
        iterations += sol.iterations;
        if (sol.status == LpStatus::Infeasible) {
            // Infeasible over a row subset stays infeasible with every row.
            sol.iterations = iterations;
            return sol;
        }
        if (sol.status == LpStatus::Unbounded) {
            // A ray over the subset may be blocked by inactive cuts.
            if (activated_everything || active.size() == model.pool.size()) {
                sol.iterations = iterations;
                return sol;
            }
            active.clear();
            for (size_t k = 0; k < model.pool.size(); ++k)
                active.push_back(static_cast<int>(k));
            is_active.assign(model.pool.size(), 1);
            activated_everything = true;
            continue;
        }
        bool added = false;
        for (size_t k = 0; k < model.pool.size(); ++k) {
            if (is_active[k]) continue;
            if (row_violation(model.pool[k], sol.values) > opts.feas_tol) {
                is_active[k] = 1;
                active.push_back(static_cast<int>(k));
                added = true;
            }
        }
        if (!added) {
            sol.iterations = iterations;
            return sol;
        }
    }
}

LpSolution solve_lp(const LinearModel& model, const LpOptions& opts) {
    std::vector<double> lower(model.vars.size()), upper(model.vars.size());
    for (size_t j = 0; j < model.vars.size(); ++j) {
        lower[j] = model.vars[j].lower;
        upper[j] = model.vars[j].upper;
    }
    return solve_lp_bounded(model, lower, upper, opts);
}

} // namespace ppsc::mip
