#include "ppsc/linear_model.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ppsc::mip {

std::string to_string(Relation rel) {
    switch (rel) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    default: return "=";
    }
}

std::string to_string(CutTag tag) {
    switch (tag) {
    case CutTag::NoGood: return "no_good";
    case CutTag::StrengthenedNoGood: return "strengthened_no_good";
    case CutTag::Submodular: return "submodular";
    case CutTag::NewValid: return "new_valid";
    default: return "oracle_phase";
    }
}

int LinearModel::add_binary(const std::string& name, double cost) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable name: " + name);
    const int id = static_cast<int>(vars.size());
    vars.push_back({name, VarKind::Binary, 0.0, 1.0});
    objective.push_back(cost);
    index_.emplace(name, id);
    return id;
}

int LinearModel::add_continuous(const std::string& name, double lower, double upper,
                                double cost) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable name: " + name);
    const int id = static_cast<int>(vars.size());
    vars.push_back({name, VarKind::Continuous, lower, upper});
    objective.push_back(cost);
    index_.emplace(name, id);
    return id;
}

void LinearModel::add_row(const std::string& name,
                          std::vector<std::pair<int, double>> terms, Relation rel,
                          double rhs) {
    rows.push_back({name, std::move(terms), rel, rhs});
}

int LinearModel::var_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown variable name: " + name);
    return it->second;
}

void validate_model(const LinearModel& model) {
    if (model.vars.size() != model.objective.size())
        throw std::invalid_argument("objective size does not match variable count");
    for (const Variable& v : model.vars) {
        if (v.kind == VarKind::Binary) {
            if (v.lower < -1e-12 || v.upper > 1.0 + 1e-12 || v.lower > v.upper + 1e-12)
                throw std::invalid_argument("binary variable " + v.name +
                                            " has bounds outside [0,1]");
        } else {
            if (!std::isfinite(v.lower) || !std::isfinite(v.upper))
                throw std::invalid_argument("continuous variable " + v.name +
                                            " needs finite bounds");
            if (v.lower > v.upper)
                throw std::invalid_argument("empty bound interval on " + v.name);
        }
    }
    const int nv = static_cast<int>(model.vars.size());
    auto check_rows = [&](const std::vector<Constraint>& rows) {
        for (const Constraint& row : rows)
            for (const auto& [j, coef] : row.terms) {
                if (j < 0 || j >= nv)
                    throw std::invalid_argument("row " + row.name +
                                                " references unknown variable index");
                if (!std::isfinite(coef))
                    throw std::invalid_argument("row " + row.name + " has a non-finite coefficient");
            }
    };
    check_rows(model.rows);
    check_rows(model.pool);
}

namespace {

uint64_t hash_constraint(const Constraint& c) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (const auto& [j, coef] : c.terms) {
        mix(static_cast<uint64_t>(j));
        uint64_t bits;
        std::memcpy(&bits, &coef, sizeof bits);
        mix(bits);
    }
    mix(static_cast<uint64_t>(c.rel));
    uint64_t bits;
    std::memcpy(&bits, &c.rhs, sizeof bits);
    mix(bits);
    return h;
}

bool same_constraint(const Constraint& a, const Constraint& b) {
    return a.rel == b.rel && a.rhs == b.rhs && a.terms == b.terms;
}

} // namespace

bool add_cut(LinearModel& model, const LinearCut& cut) {
    Constraint row;
    row.rel = cut.rel;
    row.rhs = cut.rhs;
    bool nonzero = false;
    for (const auto& [name, coef] : cut.coeffs) {
        const int j = model.var_index(name); // throws on unknown names
        if (coef != 0.0) {
            row.terms.emplace_back(j, coef);
            nonzero = true;
        }
    }
    if (!nonzero) throw std::invalid_argument("cut has no nonzero coefficient");
    std::sort(row.terms.begin(), row.terms.end());
    const uint64_t h = hash_constraint(row);
    auto [lo, hi] = model.pool_hash_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
        if (same_constraint(model.pool[it->second], row)) return false;
    row.name = "cut" + std::to_string(model.pool.size());
    model.pool_hash_.emplace(h, static_cast<int>(model.pool.size()));
    model.pool.push_back(std::move(row));
    model.pool_tags.push_back(cut.tag);
    return true;
}

double row_violation(const Constraint& row, const std::vector<double>& values) {
    double lhs = 0.0;
    for (const auto& [j, coef] : row.terms) lhs += coef * values[j];
    switch (row.rel) {
    case Relation::LessEqual: return lhs - row.rhs;
    case Relation::GreaterEqual: return row.rhs - lhs;
    default: return std::abs(lhs - row.rhs);
    }
}

double cut_violation(const LinearModel& model, const LinearCut& cut,
                     const std::vector<double>& values) {
    Constraint row;
    row.rel = cut.rel;
    row.rhs = cut.rhs;
    for (const auto& [name, coef] : cut.coeffs)
        row.terms.emplace_back(model.var_index(name), coef);
    return row_violation(row, values);
}

std::string dump_model(const LinearModel& model) {
    std::ostringstream out;
    out << "min";
    bool first = true;
    for (size_t j = 0; j < model.vars.size(); ++j) {
        if (model.objective[j] == 0.0) continue;
        out << (first ? " " : " + ") << model.objective[j] << ' ' << model.vars[j].name;
        first = false;
    }
    if (first) out << " 0";
    out << "\ns.t.\n";
    auto print_rows = [&](const std::vector<Constraint>& rows) {
        for (const Constraint& row : rows) {
            out << "  " << row.name << ':';
            for (const auto& [j, coef] : row.terms)
                out << ' ' << (coef >= 0 ? "+" : "") << coef << ' ' << model.vars[j].name;
            out << ' ' << to_string(row.rel) << ' ' << row.rhs << '\n';
        }
    };
    print_rows(model.rows);
    print_rows(model.pool);
    for (const Variable& v : model.vars)
        out << "  " << v.lower << " <= " << v.name << " <= " << v.upper
            << (v.kind == VarKind::Binary ? " (binary)\n" : "\n");
    return out.str();
}

} // namespace ppsc::mip
