#include <benchmark/benchmark.h>

#include "qflda/flda.hpp"
#include "qflda/harness.hpp"
#include "qflda/labeling.hpp"
#include "qflda/measure.hpp"
#include "qflda/states.hpp"

using namespace qflda;

namespace {

DensityOperator state_for(int n) {
    return n == 2 ? werner2({0.6}) : werner_ghz(n, 0.6);
}

// Fast Pauli expectation against the dense tr(rho O) path.
void BM_PauliExpectation(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto rho = state_for(n);
    const auto s = PauliString::from_index((std::size_t{1} << (2 * n)) - 2, n);
    for (auto _ : st) benchmark::DoNotOptimize(expectation(rho, s));
}
BENCHMARK(BM_PauliExpectation)->DenseRange(2, 4);

void BM_DenseExpectation(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto rho = state_for(n);
    const auto op = pauli_string_operator(PauliString::from_index((std::size_t{1} << (2 * n)) - 2, n));
    for (auto _ : st) benchmark::DoNotOptimize(expectation(rho, op));
}
BENCHMARK(BM_DenseExpectation)->DenseRange(2, 4);

void BM_ExactFeatures(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const auto rho = state_for(n);
    const auto obs = ObservableSet::full(n);
    for (auto _ : st) benchmark::DoNotOptimize(exact_features(rho, obs));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(obs.size()));
}
BENCHMARK(BM_ExactFeatures)->DenseRange(2, 4);

void BM_SampledFeatures(benchmark::State& st) {
    const auto rho = werner_ghz(3, 0.6);
    const auto obs = ObservableSet::full(3);
    RngStream rng(1);
    for (auto _ : st) benchmark::DoNotOptimize(sampled_features(rho, obs, st.range(0), rng));
}
BENCHMARK(BM_SampledFeatures)->Arg(512)->Arg(2048)->Arg(1'000'000);

void BM_PptReport(benchmark::State& st) {
    const auto rho = state_for(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(ppt_report(rho));
}
BENCHMARK(BM_PptReport)->DenseRange(2, 4);

void BM_Fit(benchmark::State& st) {
    ExperimentConfig c;
    c.family = st.range(0) == 2 ? Family::Werner2 : (st.range(0) == 3 ? Family::Werner3 : Family::Werner4);
    c.overlap = Overlap::High;
    c.n_samples = 2000;
    const auto data = generate_dataset(c);
    for (auto _ : st) benchmark::DoNotOptimize(fit(data.features, data.labels));
}
BENCHMARK(BM_Fit)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_GenerateDataset(benchmark::State& st) {
    ExperimentConfig c;
    c.family = Family::Werner3;
    c.overlap = Overlap::Medium;
    c.n_samples = 4000;
    c.threads = static_cast<unsigned>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(generate_dataset(c));
}
BENCHMARK(BM_GenerateDataset)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
