#include "phaseseed/injection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phaseseed {

void InjectionConfig::validate() const {
    if (!std::isfinite(kappa) || kappa < 0.0) throw DomainError("injection: kappa must be >= 0");
    if (!std::isfinite(detuning)) throw DomainError("injection: detuning must be finite");
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw DomainError("injection: efficiency must be in [0, 1]");
}

InjectedField injected_field(const Trajectory& primary, const InjectionConfig& cfg, std::size_t k) {
    if (k >= primary.size()) throw AlignmentError("injected_field: step index beyond primary trajectory");
    return {cfg.efficiency * primary.S[k], primary.phi[k]};
}

void check_alignment(const Trajectory& primary, const DriveWaveform& drive) {
    const double tol = 1e-9 * drive.dt();
    if (std::abs(primary.dt - drive.dt()) > tol) {
        throw AlignmentError("primary dt " + std::to_string(primary.dt) + " differs from secondary dt " +
                             std::to_string(drive.dt()));
    }
    if (std::abs(primary.t0 - drive.t0()) > tol) throw AlignmentError("primary and secondary time origins differ");
    if (primary.size() < drive.size()) throw AlignmentError("primary trajectory shorter than secondary drive");
}

SimState oil_step(const SimState& s, double current, const LaserParams& p, double dt, const InjectedField& inj,
                  const InjectionConfig& cfg, const NoiseConfig& noise, std::uint64_t step_index, double t) {
    if (!(inj.S_inj >= 0.0)) throw DomainError("oil_step: S_inj must be >= 0");
    const double psi = wrap_phase(s.phi - inj.phi_inj - cfg.detuning * t);
    return OilStepper(p, dt, cfg, noise)(s, current, inj.S_inj, psi, step_index);
}

InjectedTrajectory simulate_injected(const Trajectory& primary, const DriveWaveform& drive, const LaserParams& p,
                                     const InjectionConfig& cfg, const NoiseConfig& noise,
                                     const InitialState& init) {
    p.validate();
    cfg.validate();
    check_alignment(primary, drive);
    InjectedTrajectory out;
    out.injection = cfg;
    Trajectory& traj = out.secondary;
    traj.dt = drive.dt();
    traj.t0 = drive.t0();
    traj.rng_seed = noise.seed;
    traj.params = p;
    traj.reserve(drive.size());
    const std::size_t last = primary.size() - 1;
    auto source = [&](std::size_t k) { return injected_field(primary, cfg, std::min(k, last)); };
    integrate_injected(source, drive, p, cfg, resolve_initial(init, drive, p, noise), noise,
                       [&traj](std::size_t, double current, const SimState& s, const InjectedField&) {
                           traj.push(current, s);
                       });
    return out;
}

void check_pair(const DriveWaveform& primary_drive, const LaserParams& primary_params,
                const DriveWaveform& secondary_drive, const LaserParams& secondary_params,
                const InjectionConfig& cfg) {
    primary_params.validate();
    secondary_params.validate();
    cfg.validate();
    if (std::abs(primary_drive.dt() - secondary_drive.dt()) > 1e-9 * secondary_drive.dt() ||
        std::abs(primary_drive.t0() - secondary_drive.t0()) > 1e-9 * secondary_drive.dt()) {
        throw AlignmentError("primary and secondary drives are on different grids");
    }
    if (primary_drive.size() < secondary_drive.size()) throw AlignmentError("primary drive shorter than secondary");
}

PairTrajectories simulate_pair(const DriveWaveform& primary_drive, const LaserParams& primary_params,
                               const NoiseConfig& primary_noise, const DriveWaveform& secondary_drive,
                               const LaserParams& secondary_params, const InjectionConfig& cfg,
                               const NoiseConfig& secondary_noise) {
    PairTrajectories out;
    auto init_traj = [](Trajectory& t, const DriveWaveform& d, const LaserParams& p, const NoiseConfig& n) {
        t.dt = d.dt();
        t.t0 = d.t0();
        t.rng_seed = n.seed;
        t.params = p;
        t.reserve(d.size());
    };
    init_traj(out.primary, primary_drive, primary_params, primary_noise);
    init_traj(out.secondary, secondary_drive, secondary_params, secondary_noise);
    integrate_pair(primary_drive, primary_params, primary_noise, secondary_drive, secondary_params, cfg,
                   secondary_noise, [&](std::size_t k, double current, const SimState& s, const SimState& ps) {
                       out.primary.push(primary_drive[k], ps);
                       out.secondary.push(current, s);
                   });
    // the primary may extend past the secondary
    if (out.primary.size() < primary_drive.size()) {
        const Stepper primary_step(primary_params, primary_drive.dt(), primary_noise);
        std::size_t k = out.primary.size() - 1;
        SimState ps = out.primary.state(k);
        for (; k + 1 < primary_drive.size(); ++k) {
            ps = primary_step(ps, primary_drive[k], k);
            out.primary.push(primary_drive[k + 1], ps);
        }
    }
    return out;
}

LockingRange locking_range(const LaserParams& p, const InjectionConfig& cfg, double injection_ratio) {
    if (!(injection_ratio >= 0.0)) throw DomainError("locking_range: injection ratio must be >= 0");
    const double upper = cfg.kappa * std::sqrt(injection_ratio);
    return {-std::sqrt(1.0 + p.alpha * p.alpha) * upper, upper};
}

double injection_ratio(const InjectionConfig& cfg, const LaserParams& primary, double primary_current,
                       const LaserParams& secondary, double secondary_current) {
    const double S_p = steady_state(primary_current, primary, primary.photon_floor()).S;
    const double S_s = steady_state(secondary_current, secondary, secondary.photon_floor()).S;
    return cfg.efficiency * S_p / S_s;
}

double matched_detuning(const LaserParams& primary, double primary_current, double offset) {
    return offset - steady_state_phase_rate(primary_current, primary);
}

double predicted_differential_phase(double delta_omega, double T) {
    if (!(T > 0.0)) throw DomainError("predicted_differential_phase: T must be > 0");
    return wrap_phase(delta_omega * T);
}

std::vector<double> relative_phase(const Trajectory& primary, const Trajectory& secondary, double detuning) {
    if (primary.size() < secondary.size()) throw AlignmentError("relative_phase: primary shorter than secondary");
    std::vector<double> out(secondary.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = secondary.phi[k] - primary.phi[k] - detuning * secondary.time(k);
    }
    return out;
}

std::size_t count_phase_slips(std::span<const double> unwrapped, std::size_t begin, std::size_t end) {
    end = std::min(end, unwrapped.size());
    if (begin >= end) return 0;
    const auto [lo, hi] = std::minmax_element(unwrapped.begin() + static_cast<std::ptrdiff_t>(begin),
                                              unwrapped.begin() + static_cast<std::ptrdiff_t>(end));
    return static_cast<std::size_t>(std::floor((*hi - *lo) / constants::two_pi));
}

}  // namespace phaseseed
