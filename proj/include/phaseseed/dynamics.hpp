#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "phaseseed/params.hpp"
#include "phaseseed/rng.hpp"
#include "phaseseed/ziggurat.hpp"

namespace phaseseed {

/// Carrier density, photon density and unwrapped optical phase.  The phase is
/// measured in the frame rotating at the laser's threshold frequency.
struct SimState {
    double N = 0.0;
    double S = 0.0;
    double phi = 0.0;
};

struct Rates {
    double dN = 0.0;
    double dS = 0.0;
    double dphi = 0.0;
};

/// Langevin increments (per unit time) for one integration step.
struct LangevinTerms {
    double F_N = 0.0;
    double F_S = 0.0;
    double F_phi = 0.0;
};

struct NoiseConfig {
    bool enabled = false;
    std::uint64_t seed = 0;
    /// Photon-density floor; unset means one photon per active volume.
    std::optional<double> S_floor;
    /// Multiplies every Langevin term.  1 is the physical model; 0 disables
    /// the noise while keeping the random draws in place.
    double amplitude = 1.0;

    double floor_for(const LaserParams& p) const { return S_floor.value_or(p.photon_floor()); }
};

/// Deterministic right-hand sides of the carrier, photon and phase equations.
/// Throws DomainError on non-finite input.
Rates derivatives(const SimState& s, double current, const LaserParams& p);

/// Rate-equation coefficients with the divisions hoisted out; evaluates the
/// deterministic right-hand sides without validation.
class RateModel {
public:
    explicit RateModel(const LaserParams& p) noexcept
        : g_(p.g),
          N0_(p.N0),
          eps_(p.eps),
          Gamma_(p.Gamma),
          Gamma_g_(p.Gamma * p.g),
          inv_qV_(1.0 / (constants::electron_charge * p.V)),
          inv_tau_n_(1.0 / p.tau_n),
          inv_tau_p_(1.0 / p.tau_p),
          spont_(p.Gamma * p.beta / p.tau_n),
          half_alpha_(0.5 * p.alpha) {}

    Rates operator()(const SimState& s, double current) const noexcept {
        const double gain = g_ * (s.N - N0_);
        const double stim = gain / (1.0 + eps_ * s.S) * s.S;
        return {current * inv_qV_ - s.N * inv_tau_n_ - stim, Gamma_ * stim - s.S * inv_tau_p_ + spont_ * s.N,
                half_alpha_ * (Gamma_g_ * (s.N - N0_) - inv_tau_p_)};
    }

private:
    double g_, N0_, eps_, Gamma_, Gamma_g_, inv_qV_, inv_tau_n_, inv_tau_p_, spont_, half_alpha_;
};

/// Same as derivatives() without input validation.
inline Rates rate_terms(const SimState& s, double current, const LaserParams& p) noexcept {
    return RateModel(p)(s, current);
}

/// Langevin-term prefactors for a fixed step size.
class LangevinModel {
public:
    LangevinModel(const LaserParams& p, double dt) noexcept
        : spont_(p.Gamma * p.beta / (p.tau_n * dt)),
          carrier_(2.0 / (p.V * p.tau_n * dt)),
          inv_Gamma_(1.0 / p.Gamma) {}

    /// Terms from standard normals drawn in the order x_S, x_phi, x_Z.
    LangevinTerms operator()(const SimState& s, double x_S, double x_phi, double x_Z) const noexcept {
        const double sp = spont_ * s.N;
        const double F_S = std::sqrt(2.0 * sp * s.S) * x_S;
        const double F_phi = std::sqrt(0.5 * sp / s.S) * x_phi;
        const double F_Z = std::sqrt(carrier_ * s.N) * x_Z;
        return {F_Z - F_S * inv_Gamma_, F_S, F_phi};
    }

private:
    double spont_, carrier_, inv_Gamma_;
};

/// Draws x_S, x_phi, x_Z for integration step `step_index` with the
/// ziggurat method.  Words come from Philox counters keyed by the step, so the
/// draws are a pure function of (generator key, step_index).
inline std::array<double, 3> step_normals(const Philox4x32& gen, std::uint64_t step_index) noexcept {
    StepWords src(gen, step_index);
    const std::uint32_t w0 = src.next();
    const std::uint32_t w1 = src.next();
    const std::uint32_t w2 = src.next();
    const std::uint32_t layers = src.next();
    const double x_S = ziggurat_normal(static_cast<std::int32_t>(w0), layers & 127u, src);
    const double x_phi = ziggurat_normal(static_cast<std::int32_t>(w1), (layers >> 8) & 127u, src);
    const double x_Z = ziggurat_normal(static_cast<std::int32_t>(w2), (layers >> 16) & 127u, src);
    return {x_S, x_phi, x_Z};
}

/// Langevin increments for the state at integration step `step_index`
/// drawn from the stream keyed by `seed`.
LangevinTerms langevin_increments(const SimState& s, const LaserParams& p, double dt, std::uint64_t seed,
                                  std::uint64_t step_index);

/// Fixed-step Euler-Maruyama integrator for one laser.
class Stepper {
public:
    Stepper(const LaserParams& p, double dt, const NoiseConfig& noise)
        : rates_(p), langevin_(p, dt), gen_(noise.seed), dt_(dt), floor_(noise.floor_for(p)),
          amplitude_(noise.amplitude), noisy_(noise.enabled) {}

    const RateModel& rates() const noexcept { return rates_; }

    /// Adds the Langevin terms (when enabled) to precomputed deterministic
    /// rates, takes the step, clamps S to the floor and N to zero.  Throws
    /// IntegrationBlowup if the update is not finite.
    SimState advance(const SimState& s, const Rates& r, std::uint64_t step_index) const {
        double dN = r.dN;
        double dS = r.dS;
        double dphi = r.dphi;
        if (noisy_) {
            const auto x = step_normals(gen_, step_index);
            const auto F = langevin_(s, x[0], x[1], x[2]);
            dN += amplitude_ * F.F_N;
            dS += amplitude_ * F.F_S;
            dphi += amplitude_ * F.F_phi;
        }
        SimState next{s.N + dt_ * dN, s.S + dt_ * dS, s.phi + dt_ * dphi};
        if (!std::isfinite(next.N) || !std::isfinite(next.S) || !std::isfinite(next.phi)) blowup(next, step_index);
        if (next.S < floor_) next.S = floor_;
        if (next.N < 0.0) next.N = 0.0;
        return next;
    }

    SimState operator()(const SimState& s, double current, std::uint64_t step_index) const {
        return advance(s, rates_(s, current), step_index);
    }

private:
    [[noreturn]] static void blowup(const SimState& next, std::uint64_t step_index);

    RateModel rates_;
    LangevinModel langevin_;
    Philox4x32 gen_;
    double dt_, floor_, amplitude_;
    bool noisy_;
};

/// One Euler-Maruyama step of the free-running laser from `s` at step
/// index `step_index`.
SimState step(const SimState& s, double current, const LaserParams& p, double dt, const NoiseConfig& noise,
              std::uint64_t step_index);

/// Noise-free steady state at constant current.  Below threshold returns
/// S = floor, N = I tau_n / (q V), phi = 0; above threshold solves the
/// steady state by damped fixed-point iteration.
SimState steady_state(double current, const LaserParams& p, double S_floor);

/// Steady-state phase rotation rate d(phi)/dt at constant current above
/// threshold, in rad/s (the adiabatic frequency offset times 2 pi).
double steady_state_phase_rate(double current, const LaserParams& p);

}  // namespace phaseseed
