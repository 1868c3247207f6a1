#pragma once

#include <functional>
#include <vector>

#include "ppsc/linear_model.hpp"
#include "ppsc/simplex.hpp"

namespace ppsc::mip {

enum class MipStatus { Optimal, Infeasible, Unbounded, Limit };

struct SolveOutcome {
    MipStatus status = MipStatus::Infeasible;
    std::vector<double> values; // empty unless an incumbent exists
    double objective = 0.0;
    double best_bound = 0.0;
    long nodes = 0;
    long lp_iterations = 0;
    int cuts_added = 0;
    std::vector<LinearCut> generated_cuts; // cuts installed during the solve
};

/// Pure function of a candidate integer solution; returns zero or more
/// globally valid cuts. Binary entries of the candidate are exact 0/1.
using LazyCallback = std::function<std::vector<LinearCut>(const std::vector<double>&)>;

struct BnbLimits {
    long max_nodes = -1;     // < 0 means unlimited
    double time_limit_s = -1;
};

/// Exact branch and bound over the model's binaries: best-bound node order,
/// most-fractional branching, ties to the lowest variable index. Every
/// integer-feasible candidate is offered to the callback before it can become
/// incumbent; returned cuts are installed into the model's pool and, when at
/// least one of them is violated by the candidate, the candidate is rejected
/// and its node re-solved. Cuts that do not cut the candidate off are
/// installed without rejecting it (the candidate already satisfies them).
SolveOutcome solve_bnb(LinearModel& model, const LazyCallback& callback = {},
                       const BnbLimits& limits = {}, const LpOptions& lp_opts = {});

/// Violation threshold for rejecting a candidate on a returned cut.
inline constexpr double kCutViolationTol = 1e-6;

/// Adapter seam for delegating solves to an external MIP engine. The internal
/// kernel is the reference implementation and the only one shipped here.
class MipBackend {
public:
    virtual ~MipBackend() = default;
    virtual SolveOutcome solve(LinearModel& model, const LazyCallback& callback,
                               const BnbLimits& limits) = 0;
};

class InternalMipBackend final : public MipBackend {
public:
    SolveOutcome solve(LinearModel& model, const LazyCallback& callback,
                       const BnbLimits& limits) override {
        return solve_bnb(model, callback, limits);
    }
};

} // namespace ppsc::mip
