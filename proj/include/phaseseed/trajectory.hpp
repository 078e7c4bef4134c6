#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phaseseed/dynamics.hpp"
#include "phaseseed/errors.hpp"
#include "phaseseed/waveform.hpp"

namespace phaseseed {

/// One simulated run.  Row k holds the state at t0 + k dt and the current
/// applied over [t0 + k dt, t0 + (k+1) dt).
struct Trajectory {
    double dt = 0.0;
    double t0 = 0.0;
    std::vector<double> I;
    std::vector<double> N;
    std::vector<double> S;
    std::vector<double> phi;
    std::vector<double> P;
    std::uint64_t rng_seed = 0;
    LaserParams params;

    std::size_t size() const noexcept { return S.size(); }
    double time(std::size_t k) const noexcept { return t0 + dt * static_cast<double>(k); }
    SimState state(std::size_t k) const { return {N[k], S[k], phi[k]}; }

    void reserve(std::size_t n);
    void push(double current, const SimState& s);
};

/// Initial condition: an explicit state, or the steady state at the first
/// drive sample when unset.
using InitialState = std::optional<SimState>;

SimState resolve_initial(const InitialState& init, const DriveWaveform& drive, const LaserParams& p,
                         const NoiseConfig& noise);

/// Streams a free-running integration through `observer(k, current, state)`
/// where `state` is the state at the start of step k.  Returns the state
/// after the last step.
template <class Observer>
SimState integrate(const DriveWaveform& drive, const LaserParams& p, const SimState& init,
                   const NoiseConfig& noise, Observer&& observer) {
    const Stepper stepper(p, drive.dt(), noise);
    SimState s = init;
    for (std::size_t k = 0; k < drive.size(); ++k) {
        const double current = drive[k];
        observer(k, current, s);
        s = stepper(s, current, k);
    }
    return s;
}

/// Free-running simulation over the whole drive, recording every step.
Trajectory simulate(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                    const NoiseConfig& noise);

/// CSV with header t_s,I_A,N_per_m3,S_per_m3,P_W,phi_rad; %.12e; LF endings.
/// `decimation` > 1 writes every n-th row.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t decimation = 1);
Trajectory read_trajectory_csv(std::istream& is, const LaserParams& p);

/// Frequency offset (1/2pi) dphi/dt by central differences, one-sided at the ends.
std::vector<double> instantaneous_chirp(const Trajectory& traj);

/// Frequency offset from the power series:
/// (alpha / 4pi) (d ln P / dt + 2 Gamma eps P / (V eta h nu)).
/// Samples where P (or a neighbour used by the difference) is not positive
/// are returned as NaN.
std::vector<double> chirp_from_power(const std::vector<double>& P, double dt, const LaserParams& p);

}  // namespace phaseseed
