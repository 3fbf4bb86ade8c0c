#include "wpw/bench.hpp"
#include "wpw/ip.hpp"

#include <benchmark/benchmark.h>

using namespace wpw;

namespace {

struct IpFixture {
    Instance inst;
    StarSolution sol;
    IpFixture() {
        GenParams gp;
        gp.n = 7;
        gp.k = 3;
        gp.horizon = 40;
        gp.max_length = 6;
        gp.seed = 11;
        gp.distinct_deadlines = true;
        inst = generate(gp);
        sol = schedule_to_stars(inst, endpoint_only_schedule(inst));
    }
};

const IpFixture& ip_fixture() {
    static IpFixture f;
    return f;
}

void ip_check(benchmark::State& state, bool parallel) {
    const auto& f = ip_fixture();
    IpCheckOptions opt;
    opt.parallel = parallel;
    opt.budget = 1e12;
    for (auto _ : state) benchmark::DoNotOptimize(check_ip_constraints(f.inst, f.sol, opt));
}

ExperimentConfig grid() {
    ExperimentConfig cfg;
    cfg.timing = false;
    cfg.with_ip_lb = false;
    for (int s = 0; s < 16; ++s) {
        GenParams gp;
        gp.n = 5;
        gp.k = 2;
        gp.horizon = 8;
        gp.variant = Variant::wPwTwP;
        gp.seed = static_cast<std::uint64_t>(100 + s);
        cfg.instances.push_back(gp);
    }
    return cfg;
}

void experiment(benchmark::State& state, bool parallel) {
    ExperimentConfig cfg = grid();
    for (auto _ : state) {
        auto rows = parallel ? run_experiment(cfg) : run_experiment_serial(cfg);
        benchmark::DoNotOptimize(rows);
    }
}

}  // namespace

BENCHMARK_CAPTURE(ip_check, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ip_check, parallel, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(experiment, parallel, true)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
