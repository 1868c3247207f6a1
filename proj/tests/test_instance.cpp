#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "ppsc/instance.hpp"

#include "test_support.hpp"

using namespace ppsc;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("validate accepts a minimal instance") {
    const PpscInstance inst = make_instance(CoverageModel::IndependentCoverage, 1, 1, {1.0},
                                            {{0, 0, 0.5}}, 1, 0.1);
    CHECK(inst.num_sets == 1);
    CHECK(inst.out_arcs[0].size() == 1);
    CHECK(inst.in_arcs[0].size() == 1);
}

TEST_CASE("validate reports the first violated invariant") {
    CHECK_THROWS_WITH_AS(make_instance(CoverageModel::LinearThreshold, 2, 1, {1, 1},
                                       {{0, 0, 0.6}, {1, 0, 0.6}}, 1, 0.1),
                         "LT row-sum exceeds 1 at item 0", std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_instance(CoverageModel::IndependentCoverage, 1, 1, {1},
                                       {{0, 0, 0.5}}, 2, 0.1),
                         "target exceeds item count", std::invalid_argument);
    CHECK_THROWS_AS(make_instance(CoverageModel::IndependentCoverage, 1, 1, {1},
                                  {{0, 0, 1.5}}, 1, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_instance(CoverageModel::IndependentCoverage, 1, 1, {-1},
                                  {{0, 0, 0.5}}, 1, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_instance(CoverageModel::IndependentCoverage, 1, 1, {1},
                                  {{0, 0, 0.5}}, 1, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_instance(CoverageModel::IndependentCoverage, 1, 1, {1},
                                  {{0, 0, 0.5}, {0, 0, 0.4}}, 1, 0.1),
                    std::invalid_argument);
}

TEST_CASE("LT row sum of exactly one is accepted") {
    const PpscInstance inst = make_instance(CoverageModel::LinearThreshold, 2, 1, {1, 1},
                                            {{0, 0, 0.5}, {1, 0, 0.5}}, 1, 0.1);
    CHECK(inst.in_arcs[0].size() == 2);
}

TEST_CASE("benchmark generator matches the published parameterization") {
    const PpscInstance inst =
        generate_paper_instance(CoverageModel::IndependentCoverage, 60, 1.0, 0.05, 0);
    CHECK(inst.num_sets == 30);
    CHECK(inst.num_items == 30);
    CHECK(inst.tau == 18);
    for (double b : inst.costs) CHECK(b == 1.0); // unit-cost convention
    // First head node weight: 0.18 + 1 * 0.04 / 10.
    CHECK(inst.out_arcs[0][0].second == doctest::Approx(0.184).epsilon(1e-12));
    // Head group covers a higher expected count than the tail group.
    CHECK(inst.out_arcs[0][0].second > inst.out_arcs[29][0].second);
    CHECK(static_cast<int>(inst.weights.size()) == 30 * 30);
}

TEST_CASE("benchmark generator handles the smallest even size") {
    const PpscInstance inst =
        generate_paper_instance(CoverageModel::IndependentCoverage, 2, 1.0, 0.1, 0);
    CHECK(inst.num_sets == 1);
    CHECK(inst.num_items == 1);
    CHECK(inst.tau == 1);
    CHECK_THROWS_AS(generate_paper_instance(CoverageModel::IndependentCoverage, 1, 1, 0.1, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_paper_instance(CoverageModel::IndependentCoverage, 7, 1, 0.1, 0),
                    std::invalid_argument);
}

TEST_CASE("benchmark generator is deterministic and nonnegative for scaled costs") {
    const PpscInstance a =
        generate_paper_instance(CoverageModel::IndependentCoverage, 60, 100.0, 0.05, 1);
    const PpscInstance b =
        generate_paper_instance(CoverageModel::IndependentCoverage, 60, 100.0, 0.05, 99);
    CHECK(a == b); // the scheme is formulaic; the seed is plumbing
    CHECK(a.costs[0] == doctest::Approx(10.0));
    CHECK(a.costs[9] == doctest::Approx(100.0));
    for (double c : a.costs) CHECK(c >= 0.0);
    // Tail costs decrease with the node index.
    for (int i = 11; i < 30; ++i) CHECK(a.costs[i] <= a.costs[i - 1]);
}

TEST_CASE("generated LT instances keep row sums within one") {
    for (int v : {2, 8, 16, 20}) {
        const PpscInstance inst =
            generate_paper_instance(CoverageModel::LinearThreshold, v, 1.0, 0.1, 0);
        for (int j = 0; j < inst.num_items; ++j) {
            double sum = 0.0;
            for (const auto& [set, w] : inst.in_arcs[j]) sum += w;
            CHECK(sum <= 1.0);
        }
    }
    // With a nonempty tail group the verbatim weight formula overshoots the
    // row-sum requirement and generation must fail its own validation.
    CHECK_THROWS_AS(generate_paper_instance(CoverageModel::LinearThreshold, 60, 1.0, 0.1, 0),
                    std::invalid_argument);
}

TEST_CASE("instance JSON round trip is bit exact") {
    for (const CoverageModel model :
         {CoverageModel::IndependentCoverage, CoverageModel::LinearThreshold}) {
        const int v = model == CoverageModel::LinearThreshold ? 16 : 60;
        const PpscInstance inst = generate_paper_instance(model, v, 100.0, 0.0125, 0);
        const std::string path = temp_path("ppsc_roundtrip.json");
        save_instance(inst, path);
        const PpscInstance back = load_instance(path);
        CHECK(back == inst);
        std::filesystem::remove(path);
    }
}

TEST_CASE("instance JSON schema violations are reported") {
    CHECK_THROWS_AS(instance_from_json_text("{\"model\":\"independent_coverage\",\"n\":1,"
                                            "\"m\":1,\"costs\":[1],\"weights\":[[0,0,0.5]],"
                                            "\"epsilon\":0.1}"),
                    std::runtime_error); // missing tau
    CHECK_THROWS_AS(instance_from_json_text("not json"), std::runtime_error);
    CHECK_THROWS_AS(instance_from_json_text("{\"model\":\"bogus\",\"n\":1,\"m\":1,"
                                            "\"costs\":[1],\"weights\":[],\"tau\":0,"
                                            "\"epsilon\":0.1}"),
                    std::invalid_argument);
    // Row sum exactly 1.0 parses and validates.
    const PpscInstance inst = instance_from_json_text(
        "{\"model\":\"linear_threshold\",\"n\":2,\"m\":1,\"costs\":[1,1],"
        "\"weights\":[[0,0,0.5],[1,0,0.5]],\"tau\":1,\"epsilon\":0.1}");
    CHECK(inst.model == CoverageModel::LinearThreshold);
}

TEST_CASE("selection support helpers") {
    const Selection x = selection_from_support(5, {1, 3});
    CHECK(x == Selection{0, 1, 0, 1, 0});
    CHECK(support(x) == std::vector<int>{1, 3});
    CHECK_THROWS_AS(selection_from_support(2, {5}), std::out_of_range);
}
