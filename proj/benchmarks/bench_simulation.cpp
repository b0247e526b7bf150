#include <benchmark/benchmark.h>

#include <fstream>
#include <string>

#include "bbtv/abc.hpp"
#include "bbtv/forecast.hpp"
#include "bbtv/summary.hpp"

using namespace bbtv;

namespace {

const std::string kData = BBTV_DATA_DIR;
const ParamSet kTruth = ParamSet::make(0.25, 0.30, 0.06, 0.04, 0.007, 0.006);

const Network& fixture() {
    static const Network net = load_network_files(kData + "/fixture/network.csv", kData + "/fixture/nodes.csv");
    return net;
}

const ObservationSeries& training() {
    static const ObservationSeries s = [] {
        std::ifstream in(kData + "/synthetic/snapshots.csv");
        return read_series(in).slice(0, 38);
    }();
    return s;
}

void BM_SimulateSummarize(benchmark::State& state) {
    const auto& net = fixture();
    const State initial(net, training().column(0));
    Simulator sim(net);
    SummaryScratch scratch;
    Trajectory tr;
    SummaryVector out;
    RandomStream rng(1);
    for (auto _ : state) {
        sim.run(kTruth, initial, {2014, 12}, 37, rng, tr);
        scratch.summarize_into(tr, net, out);
        benchmark::DoNotOptimize(out.s10_summer);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulateSummarize);

// the inner loop of every sampler: simulate, summarise, compare
void BM_Discrepancy(benchmark::State& state) {
    const AbcModel model(fixture(), training());
    AbcModel::Workspace ws(model);
    const Prior prior;
    RandomStream rng(2);
    const bool from_prior = state.range(0) != 0;
    for (auto _ : state) {
        const ParamSet p = from_prior ? prior.sample(rng) : kTruth;
        benchmark::DoNotOptimize(model.simulate_discrepancy(p, rng, ws));
    }
    state.SetItemsProcessed(state.iterations());
    state.SetLabel(from_prior ? "prior draws" : "calibration parameters");
}
BENCHMARK(BM_Discrepancy)->Arg(0)->Arg(1);

void BM_McmcIterations(benchmark::State& state) {
    const AbcModel model(fixture(), training());
    McmcConfig cfg;
    cfg.iterations = 20000;
    cfg.burn_in = 0;
    cfg.thin = 1;
    cfg.epsilon = 30.0;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        cfg.master_seed = ++seed;
        const auto stats = mcmc_run(model, Prior{}, cfg, [](const PosteriorDraw&) {});
        benchmark::DoNotOptimize(stats.proposals_accepted);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.iterations));
}
BENCHMARK(BM_McmcIterations)->Unit(benchmark::kMillisecond);

void BM_Forecast(benchmark::State& state) {
    const auto& net = fixture();
    Scenario sc;
    sc.start_month = training().months().back();
    sc.initial = training().column(37);
    const std::vector<ParamSet> post{kTruth};
    for (auto _ : state) {
        const auto r = posterior_forecast(net, post, sc, {10000, 3, 1});
        benchmark::DoNotOptimize(r.ensemble.counts.data());
    }
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Forecast)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
