#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ppsc::mip {

enum class VarKind { Binary, Continuous };
enum class Relation { LessEqual, GreaterEqual, Equal };

/// Where a cut came from. Carried through reports so cut counts can be split
/// by family.
enum class CutTag { NoGood, StrengthenedNoGood, Submodular, NewValid, OraclePhase };

std::string to_string(Relation rel);
std::string to_string(CutTag tag);

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> terms; // (variable index, coefficient)
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

/// A named-variable linear inequality produced by a separation routine.
struct LinearCut {
    std::map<std::string, double> coeffs;
    Relation rel = Relation::GreaterEqual;
    double rhs = 0.0;
    CutTag tag = CutTag::NoGood;
};

/// A mixed binary-continuous minimization model plus a pool of cuts added
/// after construction. One solve owns its model exclusively.
struct LinearModel {
    std::vector<Variable> vars;
    std::vector<double> objective; // aligned with vars, minimize
    std::vector<Constraint> rows;
    std::vector<Constraint> pool;      // installed cuts
    std::vector<CutTag> pool_tags;
    /// Optional branching priorities (higher branches first); empty means all
    /// equal. Only consulted by the branch-and-bound variable selection.
    std::vector<int> branch_priority;
    /// Depth-first dive until the first incumbent before switching to
    /// best-bound search. Helps models whose relaxation value is flat across
    /// huge plateaus of completion variables (the deterministic equivalents).
    bool dive_first = false;

    int add_binary(const std::string& name, double cost = 0.0);
    int add_continuous(const std::string& name, double lower, double upper, double cost = 0.0);
    void add_row(const std::string& name, std::vector<std::pair<int, double>> terms,
                 Relation rel, double rhs);
    int var_index(const std::string& name) const;

private:
    std::unordered_map<std::string, int> index_;
    std::unordered_multimap<uint64_t, int> pool_hash_;

    friend bool add_cut(LinearModel&, const LinearCut&);
};

/// Checks the model invariants (unique names, binary bounds inside [0,1],
/// finite bounds on continuous variables). Throws std::invalid_argument.
void validate_model(const LinearModel& model);

/// Appends a cut to the pool; subsequent solves respect it. Returns false if
/// an identical cut (same coefficients, relation, rhs) is already pooled.
/// Throws on unknown variable names and on all-zero coefficient vectors.
bool add_cut(LinearModel& model, const LinearCut& cut);

/// Signed violation of a row at a point: positive means violated.
double row_violation(const Constraint& row, const std::vector<double>& values);
double cut_violation(const LinearModel& model, const LinearCut& cut,
                     const std::vector<double>& values);

/// Human-readable equation listing for debugging.
std::string dump_model(const LinearModel& model);

} // namespace ppsc::mip
