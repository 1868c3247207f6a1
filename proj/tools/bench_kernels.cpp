// Timing harness comparing the OpenMP kernels against their serial
// references. Results must agree exactly; the table reports the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ppsc/benders.hpp"
#include "ppsc/exact.hpp"
#include "ppsc/instance.hpp"
#include "ppsc/oracle.hpp"
#include "ppsc/scenario.hpp"
#include "ppsc/simplex.hpp"

namespace {

double time_of(const std::function<void()>& fn) {
    fn(); // warm-up: allocator and page-cache effects hit the first run
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  results %s\n",
                name.c_str(), serial_s, parallel_s, serial_s / parallel_s,
                equal ? "equal" : "DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("compiled without OpenMP; both columns run serial code\n");
#endif

    using namespace ppsc;
    const PpscInstance inst =
        generate_paper_instance(CoverageModel::IndependentCoverage, 60, 1.0, 0.05, 0);
    const Selection half = [&] {
        Selection x(inst.num_sets, 0);
        for (int i = 0; i < inst.num_sets; i += 2) x[i] = 1;
        return x;
    }();

    {
        McEstimate serial, parallel;
        const double ts = time_of(
            [&] { serial = monte_carlo_estimate_serial(inst, half, inst.tau, 4'000'000, 7); });
        const double tp = time_of(
            [&] { parallel = monte_carlo_estimate(inst, half, inst.tau, 4'000'000, 7); });
        report("monte_carlo_estimate", ts, tp, serial.estimate == parallel.estimate);
    }
    {
        ScenarioSet serial, parallel;
        const double ts = time_of([&] { serial = sample_scenarios_serial(inst, 20000, 3); });
        const double tp = time_of([&] { parallel = sample_scenarios(inst, 20000, 3); });
        bool equal = serial.size() == parallel.size();
        for (int k = 0; equal && k < serial.size(); ++k)
            equal = serial.scenarios[k].arcs() == parallel.scenarios[k].arcs();
        report("sample_scenarios", ts, tp, equal);
    }
    {
        const ScenarioSet scenarios = sample_scenarios(inst, 20000, 3);
        const std::vector<int> sets = support(half);
        std::vector<int> serial, parallel;
        const double ts = time_of([&] {
            for (int rep = 0; rep < 25; ++rep) serial = sigma_batch_serial(scenarios, sets);
        });
        const double tp = time_of([&] {
            for (int rep = 0; rep < 25; ++rep) parallel = sigma_batch(scenarios, sets);
        });
        report("sigma_batch", ts, tp, serial == parallel);
    }
    {
        // Probes only parallelize once n * m^2 is large enough to amortize
        // thread startup, so benchmark them on a bigger graph.
        const PpscInstance big =
            generate_paper_instance(CoverageModel::IndependentCoverage, 240, 1.0, 0.05, 0);
        const CoverageVector cv = coverage_vector(big, Selection(big.num_sets, 0));
        std::vector<double> serial, parallel;
        const double ts = time_of([&] {
            for (int rep = 0; rep < 200; ++rep)
                serial = probe_singleton_tails_serial(big, cv);
        });
        const double tp = time_of([&] {
            for (int rep = 0; rep < 200; ++rep) parallel = probe_singleton_tails(big, cv);
        });
        // The serial reference stops at the first feasible singleton, so only
        // the shared prefix is comparable.
        bool equal = true;
        for (size_t j = 0; j < serial.size(); ++j)
            if (serial[j] != parallel[j]) equal = false;
        report("probe_singleton_tails", ts, tp, equal);
    }
    {
        const ScenarioSet scenarios = sample_scenarios(inst, 40, 3);
        mip::LinearModel model = build_dep(inst, scenarios);
        mip::LpOptions serial_opts, parallel_opts;
        serial_opts.parallel_pivots = false;
        parallel_opts.parallel_pivots = true;
        mip::LpSolution serial, parallel;
        const double ts = time_of([&] { serial = mip::solve_lp(model, serial_opts); });
        const double tp = time_of([&] { parallel = mip::solve_lp(model, parallel_opts); });
        report("simplex_pivots (DEP root LP)", ts, tp,
               serial.objective == parallel.objective && serial.values == parallel.values);
    }
    return 0;
}
