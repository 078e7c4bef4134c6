#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "phaseseed/trajectory.hpp"

namespace phaseseed {

/// Coupling of an injected (primary) field into the secondary cavity.
struct InjectionConfig {
    double kappa = 0.0;          ///< coupling rate [1/s]
    double detuning = 0.0;       ///< primary minus secondary free-running angular frequency [rad/s]
    double efficiency = 0.0;     ///< fraction of the primary photon density reaching the cavity

    void validate() const;
};

/// Detuning interval [rad/s] inside which stable locking is expected.
struct LockingRange {
    double omega_min = 0.0;
    double omega_max = 0.0;

    bool contains(double detuning) const noexcept { return detuning > omega_min && detuning < omega_max; }
};

/// Injected photon density and phase seen by the secondary during one step.
struct InjectedField {
    double S_inj = 0.0;
    double phi_inj = 0.0;
};

/// Field injected during step `k`: efficiency times the primary photon
/// density, and the primary phase.
InjectedField injected_field(const Trajectory& primary, const InjectionConfig& cfg, std::size_t k);

/// Throws AlignmentError unless `primary` shares dt and time origin with the
/// drive and covers all of its samples.
void check_alignment(const Trajectory& primary, const DriveWaveform& secondary_drive);

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double x) noexcept {
    double r = std::remainder(x, constants::two_pi);
    if (r <= -std::numbers::pi) r += constants::two_pi;
    return r;
}

/// Euler-Maruyama stepper for the injection-locked secondary laser.
///
/// The coupling terms are evaluated on the relative phase
/// psi = phi - phi_inj - detuning * t, which the caller carries from step to
/// step (see next_relative_phase) so the sine and cosine never see the
/// unbounded detuning * t argument.
class OilStepper {
public:
    OilStepper(const LaserParams& p, double dt, const InjectionConfig& cfg, const NoiseConfig& noise)
        : base_(p, dt, noise), kappa_(cfg.kappa), detuning_dt_(cfg.detuning * dt) {}

    SimState operator()(const SimState& s, double current, double S_inj, double psi, std::uint64_t k) const {
        Rates r = base_.rates()(s, current);
        const double amp = std::sqrt(S_inj * s.S);
        r.dS += 2.0 * kappa_ * amp * std::cos(psi);
        r.dphi -= kappa_ * (amp / s.S) * std::sin(psi);
        return base_.advance(s, r, k);
    }

    /// Relative phase after a step, wrapped into (-pi, pi].
    double next_relative_phase(double psi, double phi_before, double phi_after, double phi_inj_before,
                               double phi_inj_after) const noexcept {
        double next = psi + (phi_after - phi_before) - (phi_inj_after - phi_inj_before) - detuning_dt_;
        while (next > std::numbers::pi) next -= constants::two_pi;
        while (next <= -std::numbers::pi) next += constants::two_pi;
        return next;
    }

private:
    Stepper base_;
    double kappa_;
    double detuning_dt_;
};

/// One injection-locked step at absolute time `t`.  Adds
/// 2 kappa sqrt(S_inj S) cos(psi) to dS/dt and -kappa sqrt(S_inj/S) sin(psi)
/// to dphi/dt with psi = phi - phi_inj - detuning * t.
SimState oil_step(const SimState& s, double current, const LaserParams& p, double dt, const InjectedField& inj,
                  const InjectionConfig& cfg, const NoiseConfig& noise, std::uint64_t step_index, double t);

/// Streams an injection-locked integration.  `source(k)` returns the
/// InjectedField for step k (called once per step, in order, for k = 0 up to
/// and including drive.size(), the last call closing the final step);
/// `observer(k, current, state, inj)` sees the state at the start of step k.
template <class Source, class Observer>
SimState integrate_injected(Source&& source, const DriveWaveform& drive, const LaserParams& p,
                            const InjectionConfig& cfg, const SimState& init, const NoiseConfig& noise,
                            Observer&& observer) {
    const OilStepper stepper(p, drive.dt(), cfg, noise);
    SimState s = init;
    InjectedField inj = source(std::size_t{0});
    double psi = wrap_phase(s.phi - inj.phi_inj - cfg.detuning * drive.t0());
    for (std::size_t k = 0; k < drive.size(); ++k) {
        const double current = drive[k];
        observer(k, current, s, inj);
        const SimState next = stepper(s, current, inj.S_inj, psi, k);
        const InjectedField inj_next = source(k + 1);
        psi = stepper.next_relative_phase(psi, s.phi, next.phi, inj.phi_inj, inj_next.phi_inj);
        s = next;
        inj = inj_next;
    }
    return s;
}

/// Secondary trajectory together with the coupling that produced it.
struct InjectedTrajectory {
    Trajectory secondary;
    InjectionConfig injection;
};

/// Simulates the secondary under injection from a recorded primary run on
/// the same time grid.  Unset `init` starts from the free-running steady
/// state at the first drive sample.
InjectedTrajectory simulate_injected(const Trajectory& primary, const DriveWaveform& secondary_drive,
                                     const LaserParams& p, const InjectionConfig& cfg, const NoiseConfig& noise,
                                     const InitialState& init = {});

/// Throws unless both drives share a grid, the primary covers the
/// secondary, and the parameters are valid.
void check_pair(const DriveWaveform& primary_drive, const LaserParams& primary_params,
                const DriveWaveform& secondary_drive, const LaserParams& secondary_params,
                const InjectionConfig& cfg);

/// Streams primary and secondary in lock step on a shared grid.
/// `observer(k, current, secondary_state, primary_state)` sees both states
/// at the start of step k of the secondary drive.  Both lasers start from
/// their free-running steady state at the first drive sample.
template <class Observer>
void integrate_pair(const DriveWaveform& primary_drive, const LaserParams& primary_params,
                    const NoiseConfig& primary_noise, const DriveWaveform& secondary_drive,
                    const LaserParams& secondary_params, const InjectionConfig& cfg,
                    const NoiseConfig& secondary_noise, Observer&& observer) {
    check_pair(primary_drive, primary_params, secondary_drive, secondary_params, cfg);
    const Stepper primary_step(primary_params, primary_drive.dt(), primary_noise);
    SimState ps = resolve_initial({}, primary_drive, primary_params, primary_noise);
    std::size_t next_k = 0;
    auto source = [&](std::size_t k) {
        while (next_k < k) {
            ps = primary_step(ps, primary_drive[next_k], next_k);
            ++next_k;
        }
        return InjectedField{cfg.efficiency * ps.S, ps.phi};
    };
    integrate_injected(source, secondary_drive, secondary_params, cfg,
                       resolve_initial({}, secondary_drive, secondary_params, secondary_noise), secondary_noise,
                       [&](std::size_t k, double current, const SimState& s, const InjectedField&) {
                           observer(k, current, s, ps);
                       });
}

/// Simulates primary and secondary in lock step without storing the
/// primary; identical to simulate() followed by simulate_injected().
struct PairTrajectories {
    Trajectory primary;
    Trajectory secondary;
};
PairTrajectories simulate_pair(const DriveWaveform& primary_drive, const LaserParams& primary_params,
                               const NoiseConfig& primary_noise, const DriveWaveform& secondary_drive,
                               const LaserParams& secondary_params, const InjectionConfig& cfg,
                               const NoiseConfig& secondary_noise);

/// Static locking range for injection ratio P_inj / P_0:
/// [-kappa sqrt(1 + alpha^2) sqrt(r), kappa sqrt(r)].
LockingRange locking_range(const LaserParams& p, const InjectionConfig& cfg, double injection_ratio);

/// P_inj / P_0 as efficiency times the primary steady-state photon density
/// over the secondary free-running steady-state photon density.
double injection_ratio(const InjectionConfig& cfg, const LaserParams& primary, double primary_current,
                       const LaserParams& secondary, double secondary_current);

/// Cavity detuning that places the emitted frequency of a CW primary at
/// bias `primary_current` at `offset` [rad/s] from the secondary's threshold
/// frequency.  offset = 0 is the zero-detuning condition.
double matched_detuning(const LaserParams& primary, double primary_current, double offset = 0.0);

/// Differential phase accumulated by the seed over one secondary period T:
/// wrap(delta_omega * T) into (-pi, pi].
double predicted_differential_phase(double delta_omega, double T);

/// phi_secondary - phi_primary - detuning * t, unwrapped.
std::vector<double> relative_phase(const Trajectory& primary, const Trajectory& secondary, double detuning);

/// Number of full 2 pi slips in an unwrapped phase series over [begin, end):
/// floor((max - min) / 2 pi).
std::size_t count_phase_slips(std::span<const double> unwrapped, std::size_t begin, std::size_t end);

}  // namespace phaseseed
