// Serial references against their OpenMP counterparts.  Set OMP_NUM_THREADS
// to vary the parallel side.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "phaseseed/drive.hpp"
#include "phaseseed/ensemble.hpp"
#include "phaseseed/measurement.hpp"
#include "phaseseed/qrng.hpp"
#include "phaseseed/rng.hpp"

using namespace phaseseed;

namespace {

Trajectory synthetic_trajectory(std::size_t n) {
    RandomStream rng(1);
    Trajectory t;
    t.dt = 1e-13;
    t.reserve(n);
    for (std::size_t k = 0; k < n; ++k) t.push(0.0, {4.8e24, 1e21 * rng.uniform(), 100.0 * rng.uniform()});
    return t;
}

std::vector<Complex> random_field(std::size_t n) {
    RandomStream rng(2);
    std::vector<Complex> f(n);
    for (auto& z : f) z = std::polar(rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    return f;
}

const Trajectory& traj() {
    static const Trajectory t = synthetic_trajectory(2'000'000);
    return t;
}

const std::vector<Complex>& field() {
    static const auto f = random_field(2'000'000);
    return f;
}

const std::vector<PulseAmplitude>& amps() {
    static const auto a = [] {
        PulseGrid g;
        g.period = 50e-13;
        return pulse_amplitudes(field(), 1e-13, 0.0, g);
    }();
    return a;
}

const std::vector<double>& intensities() {
    static const auto I = interfere_delayed(amplitudes_of(amps()));
    return I;
}

template <auto Fn>
void complex_field_bm(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(Fn(traj()));
}

template <auto Fn>
void pulse_amplitudes_bm(benchmark::State& st) {
    PulseGrid g;
    g.period = 50e-13;
    for (auto _ : st) benchmark::DoNotOptimize(Fn(field(), 1e-13, 0.0, g));
}

template <auto Fn>
void demodulate_bm(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(Fn(amps(), 1, std::nullopt));
}

template <auto Fn>
void interfere_bm(benchmark::State& st) {
    const auto a = amplitudes_of(amps());
    for (auto _ : st) benchmark::DoNotOptimize(Fn(a, 1));
}

template <auto Fn>
void adc_bm(benchmark::State& st) {
    const AdcConfig c{16, 1.0, 0.0, 12};
    for (auto _ : st) benchmark::DoNotOptimize(Fn(intensities(), c));
}

template <auto Fn>
void batch_bm(benchmark::State& st) {
    const LaserParams p = reference_dfb();
    const auto drive = gain_switch_wave(ClockConfig{}, 0.0, 2.0 * threshold_current(p), 0.5, 20);
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8};
    const auto grid = PulseGrid::from_clock(ClockConfig{});
    NoiseConfig noise;
    noise.enabled = true;
    for (auto _ : st) benchmark::DoNotOptimize(Fn(drive, p, {}, noise, seeds, grid));
}

}  // namespace

BENCHMARK(complex_field_bm<serial::complex_field>)->Name("complex_field/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(complex_field_bm<static_cast<std::vector<Complex> (*)(const Trajectory&)>(complex_field)>)
    ->Name("complex_field/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(pulse_amplitudes_bm<serial::pulse_amplitudes>)->Name("pulse_amplitudes/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(pulse_amplitudes_bm<pulse_amplitudes>)->Name("pulse_amplitudes/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(demodulate_bm<serial::demodulate>)->Name("demodulate/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(demodulate_bm<demodulate>)->Name("demodulate/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(interfere_bm<serial::interfere_delayed>)->Name("interfere_delayed/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(interfere_bm<interfere_delayed>)->Name("interfere_delayed/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(adc_bm<serial::adc_sample>)->Name("adc_sample/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(adc_bm<adc_sample>)->Name("adc_sample/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(batch_bm<serial::pulse_train_batch>)->Name("pulse_train_batch/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(batch_bm<pulse_train_batch>)->Name("pulse_train_batch/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
