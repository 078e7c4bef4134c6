#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

#include "phaseseed/measurement.hpp"
#include "phaseseed/trajectory.hpp"

namespace phaseseed {

/// results[i] = f(i), evaluated across OpenMP threads.  The first exception
/// thrown by any f(i) is rethrown after the loop.
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
    std::vector<std::invoke_result_t<F&, std::size_t>> out(n);
    std::exception_ptr error;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(phaseseed_parallel_map)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

/// Free-running runs of one drive, one per seed.
std::vector<Trajectory> simulate_batch(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                       const NoiseConfig& noise, std::span<const std::uint64_t> seeds);

/// Pulse amplitudes of free-running runs, streamed so no trajectory is kept.
std::vector<std::vector<PulseAmplitude>> pulse_train_batch(const DriveWaveform& drive, const LaserParams& p,
                                                           const InitialState& init, const NoiseConfig& noise,
                                                           std::span<const std::uint64_t> seeds,
                                                           const PulseGrid& grid);

/// Streamed pulse amplitudes of one free-running run.
std::vector<PulseAmplitude> pulse_train(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                        const NoiseConfig& noise, const PulseGrid& grid);

namespace serial {

std::vector<Trajectory> simulate_batch(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                                       const NoiseConfig& noise, std::span<const std::uint64_t> seeds);
std::vector<std::vector<PulseAmplitude>> pulse_train_batch(const DriveWaveform& drive, const LaserParams& p,
                                                           const InitialState& init, const NoiseConfig& noise,
                                                           std::span<const std::uint64_t> seeds,
                                                           const PulseGrid& grid);

}  // namespace serial

}  // namespace phaseseed
