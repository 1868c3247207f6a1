#include "doctest.h"

#include <cmath>

#include "ppsc/exact.hpp"

#include "test_support.hpp"

using namespace ppsc;
using namespace ppsc::testing;

namespace {

PpscInstance two_set_instance(double epsilon, std::vector<double> costs = {2.0, 1.0}) {
    return make_instance(CoverageModel::IndependentCoverage, 2, 2, std::move(costs),
                         {{0, 0, 0.9}, {0, 1, 0.9}, {1, 0, 0.5}, {1, 1, 0.5}}, 2, epsilon);
}

} // namespace

TEST_CASE("no-good cut flips the incumbent's pattern") {
    mip::LinearCut cut = build_no_good_cut({1, 0, 0});
    CHECK(cut.coeffs["x0"] == -1.0);
    CHECK(cut.coeffs["x1"] == 1.0);
    CHECK(cut.coeffs["x2"] == 1.0);
    CHECK(cut.rhs == 0.0); // (1 - x0) + x1 + x2 >= 1 rearranged
    CHECK_FALSE(x_cut_holds_at(cut, {1, 0, 0}));
    CHECK(x_cut_holds_at(cut, {1, 1, 0}));

    cut = build_no_good_cut({0, 0});
    CHECK(cut.rhs == 1.0); // x0 + x1 >= 1
    CHECK_FALSE(x_cut_holds_at(cut, {0, 0}));

    cut = build_no_good_cut({1, 1});
    CHECK(cut.rhs == -1.0); // (1-x0) + (1-x1) >= 1
    CHECK_FALSE(x_cut_holds_at(cut, {1, 1}));
    CHECK(x_cut_holds_at(cut, {1, 0}));
}

TEST_CASE("strengthened cut probes singleton additions") {
    // tau = 2, risk 0.25: adding set 0 alone reaches 0.81 >= 0.75, so the
    // right-hand side stays one.
    const PpscInstance relaxed = two_set_instance(0.25);
    const mip::LinearCut one = build_strengthened_cut(relaxed, {0, 0}, 2);
    CHECK(one.rhs == 1.0);
    CHECK(one.coeffs == std::map<std::string, double>{{"x0", 1.0}, {"x1", 1.0}});

    // Risk 0.05: no singleton reaches 0.95 (0.81 and 0.25 by enumeration),
    // so kappa = 2 certifies a right-hand side of two.
    const PpscInstance strict = two_set_instance(0.05);
    CHECK(tail_probability(coverage_vector(strict, {1, 0}), 2) == doctest::Approx(0.81));
    CHECK(tail_probability(coverage_vector(strict, {0, 1}), 2) == doctest::Approx(0.25));
    const mip::LinearCut two = build_strengthened_cut(strict, {0, 0}, 2);
    CHECK(two.rhs == 2.0);
    CHECK(build_strengthened_cut(strict, {0, 0}, 1).rhs == 1.0); // kappa = 1 never probes

    // Singleton zero set: the cut pins that variable.
    const mip::LinearCut pin = build_strengthened_cut(relaxed, {0, 1}, 2);
    CHECK(pin.coeffs == std::map<std::string, double>{{"x0", 1.0}});
    CHECK(pin.rhs == 1.0);

    CHECK_THROWS_AS(build_strengthened_cut(relaxed, {1, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_strengthened_cut(relaxed, {0, 0}, 3), std::invalid_argument);
}

TEST_CASE("probe batch equals its serial reference on the shared prefix") {
    Rng rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const PpscInstance inst =
            random_instance(rng, CoverageModel::IndependentCoverage, 8, 8);
        const CoverageVector cv = coverage_vector(inst, Selection(inst.num_sets, 0));
        const std::vector<double> parallel = probe_singleton_tails(inst, cv);
        const std::vector<double> serial = probe_singleton_tails_serial(inst, cv);
        for (size_t j = 0; j < serial.size(); ++j) CHECK(serial[j] == parallel[j]);
    }
}

TEST_CASE("exact solver optimizes the two-set toy") {
    const SolveReport report = solve_exact(two_set_instance(0.25));
    CHECK(report.status == SolveStatus::Optimal);
    CHECK(report.objective == 2.0);
    CHECK(report.incumbent == Selection{1, 0});
    CHECK(report.feasible_true);
    CHECK(report.attained_probability == doctest::Approx(0.81));
    const EnumeratedOptimum ref = enumerate_optimum(two_set_instance(0.25));
    CHECK(ref.cost == report.objective);
}

TEST_CASE("exact solver handles the vacuous and impossible extremes") {
    PpscInstance vacuous = two_set_instance(1.0);
    const SolveReport free_lunch = solve_exact(vacuous);
    CHECK(free_lunch.status == SolveStatus::Optimal);
    CHECK(free_lunch.objective == 0.0);
    CHECK(free_lunch.incumbent == Selection{0, 0});

    const PpscInstance impossible = make_instance(
        CoverageModel::IndependentCoverage, 2, 2, {1, 1},
        {{0, 0, 0.0}, {0, 1, 0.0}, {1, 0, 0.0}, {1, 1, 0.0}}, 1, 0.5);
    CHECK(solve_exact(impossible).status == SolveStatus::Infeasible);
}

TEST_CASE("exact solver equals exhaustive enumeration for both probe depths") {
    Rng rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        const CoverageModel model = trial % 2 ? CoverageModel::LinearThreshold
                                              : CoverageModel::IndependentCoverage;
        const PpscInstance inst = random_instance(rng, model, 9, 8);
        const EnumeratedOptimum ref = enumerate_optimum(inst);
        int iterations_kappa1 = 0;
        for (int kappa : {1, 2}) {
            ExactConfig config;
            config.kappa = kappa;
            const SolveReport report = solve_exact(inst, config);
            REQUIRE((report.status == SolveStatus::Optimal) == ref.feasible);
            if (ref.feasible) {
                CHECK(report.objective == ref.cost); // integer costs, exact match
                CHECK(report.feasible_true);
            }
            if (kappa == 1)
                iterations_kappa1 = report.master_iterations;
            else
                INFO("kappa=2 iterations ", report.master_iterations, " vs kappa=1 ",
                     iterations_kappa1);
        }
    }
}

TEST_CASE("every generated cut is satisfied by every truly feasible selection") {
    Rng rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        const CoverageModel model = trial % 2 ? CoverageModel::LinearThreshold
                                              : CoverageModel::IndependentCoverage;
        const PpscInstance inst = random_instance(rng, model, 8, 7);
        const SolveReport report = solve_exact(inst);
        for (uint32_t mask = 0; mask < (uint32_t(1) << inst.num_sets); ++mask) {
            Selection x(inst.num_sets, 0);
            for (int i = 0; i < inst.num_sets; ++i) x[i] = mask >> i & 1;
            if (!is_feasible(inst, x).feasible) continue;
            for (const mip::LinearCut& cut : report.cuts) CHECK(x_cut_holds_at(cut, x));
        }
    }
}

TEST_CASE("strengthened cuts dominate plain no-good cuts") {
    Rng rng(67);
    for (int trial = 0; trial < 30; ++trial) {
        const PpscInstance inst =
            random_instance(rng, CoverageModel::IndependentCoverage, 7, 7);
        Selection x_bar(inst.num_sets, 0);
        for (int i = 0; i < inst.num_sets; ++i) x_bar[i] = rng.next_below(2);
        if (is_feasible(inst, x_bar).feasible) continue;
        if (support(x_bar).size() == static_cast<size_t>(inst.num_sets)) continue;
        const mip::LinearCut strong = build_strengthened_cut(inst, x_bar, 2);
        const mip::LinearCut weak = build_no_good_cut(x_bar);
        for (uint32_t mask = 0; mask < (uint32_t(1) << inst.num_sets); ++mask) {
            Selection x(inst.num_sets, 0);
            for (int i = 0; i < inst.num_sets; ++i) x[i] = mask >> i & 1;
            if (x_cut_holds_at(strong, x)) CHECK(x_cut_holds_at(weak, x));
        }
    }
}

TEST_CASE("master objective never decreases across oracle iterations") {
    Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        const PpscInstance inst =
            random_instance(rng, CoverageModel::IndependentCoverage, 9, 8);
        const SolveReport report = solve_exact(inst);
        for (size_t k = 1; k < report.candidate_objectives.size(); ++k)
            CHECK(report.candidate_objectives[k] >=
                  report.candidate_objectives[k - 1] - 1e-6);
    }
}
