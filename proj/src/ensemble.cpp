#include "phaseseed/ensemble.hpp"

namespace phaseseed {

namespace {

NoiseConfig with_seed(NoiseConfig n, std::uint64_t seed) {
    n.seed = seed;
    return n;
}

}  // namespace

std::vector<PulseAmplitude> pulse_train(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                        const NoiseConfig& noise, const PulseGrid& grid) {
    PulseAccumulator acc(grid, drive.dt(), drive.t0());
    integrate(drive, p, resolve_initial(init, drive, p, noise), noise,
              [&acc](std::size_t k, double, const SimState& s) { acc.add(k, s.S, s.phi); });
    return acc.take();
}

std::vector<Trajectory> simulate_batch(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                       const NoiseConfig& noise, std::span<const std::uint64_t> seeds) {
    return parallel_map(seeds.size(),
                        [&](std::size_t i) { return simulate(drive, p, init, with_seed(noise, seeds[i])); });
}

std::vector<std::vector<PulseAmplitude>> pulse_train_batch(const DriveWaveform& drive, const LaserParams& p,
                                                           const InitialState& init, const NoiseConfig& noise,
                                                           std::span<const std::uint64_t> seeds,
                                                           const PulseGrid& grid) {
    return parallel_map(seeds.size(), [&](std::size_t i) {
        return pulse_train(drive, p, init, with_seed(noise, seeds[i]), grid);
    });
}

namespace serial {

std::vector<Trajectory> simulate_batch(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                       const NoiseConfig& noise, std::span<const std::uint64_t> seeds) {
    std::vector<Trajectory> out;
    for (const auto s : seeds) out.push_back(simulate(drive, p, init, with_seed(noise, s)));
    return out;
}

std::vector<std::vector<PulseAmplitude>> pulse_train_batch(const DriveWaveform& drive, const LaserParams& p,
                                                           const InitialState& init, const NoiseConfig& noise,
                                                           std::span<const std::uint64_t> seeds,
                                                           const PulseGrid& grid) {
    std::vector<std::vector<PulseAmplitude>> out;
    for (const auto s : seeds) out.push_back(pulse_train(drive, p, init, with_seed(noise, s), grid));
    return out;
}

}  // namespace serial

}  // namespace phaseseed
