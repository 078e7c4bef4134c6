#include "phaseseed/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "phaseseed/errors.hpp"

namespace phaseseed {

namespace {

constexpr int kSteadyStateMaxIter = 100000;
constexpr double kSteadyStateTol = 1e-10;
constexpr double kSteadyStateDamping = 0.5;

}  // namespace

Rates derivatives(const SimState& s, double current, const LaserParams& p) {
    if (!std::isfinite(s.N) || !std::isfinite(s.S) || !std::isfinite(s.phi) || !std::isfinite(current)) {
        throw DomainError("derivatives: non-finite state or current");
    }
    return rate_terms(s, current, p);
}

LangevinTerms langevin_increments(const SimState& s, const LaserParams& p, double dt, std::uint64_t seed,
                                  std::uint64_t step_index) {
    const auto x = step_normals(Philox4x32(seed), step_index);
    return LangevinModel(p, dt)(s, x[0], x[1], x[2]);
}

void Stepper::blowup(const SimState& next, std::uint64_t step_index) {
    if (!std::isfinite(next.N)) throw IntegrationBlowup("N", step_index);
    if (!std::isfinite(next.S)) throw IntegrationBlowup("S", step_index);
    throw IntegrationBlowup("phi", step_index);
}

SimState step(const SimState& s, double current, const LaserParams& p, double dt, const NoiseConfig& noise,
              std::uint64_t step_index) {
    return Stepper(p, dt, noise)(s, current, step_index);
}

SimState steady_state(double current, const LaserParams& p, double S_floor) {
    const double q = constants::electron_charge;
    const double pump = current / (q * p.V);
    if (current <= threshold_current(p)) return {current * p.tau_n / (q * p.V), S_floor, 0.0};

    // Photon balance gives N(S); carrier balance gives S(N).  Above threshold
    // N is nearly clamped, so iterating S -> N -> S is a contraction.
    double S = p.Gamma * p.tau_p * (current - threshold_current(p)) / (q * p.V);
    double N = p.threshold_density();
    for (int it = 0; it < kSteadyStateMaxIter; ++it) {
        const double sat = S / (1.0 + p.eps * S);
        N = (S / p.tau_p + p.Gamma * p.g * p.N0 * sat) / (p.Gamma * p.g * sat + p.Gamma * p.beta / p.tau_n);
        const double u = (pump - N / p.tau_n) / (p.g * (N - p.N0));
        double S_new = u > 0.0 ? u / (1.0 - p.eps * u) : S_floor;
        if (!(S_new > 0.0) || !std::isfinite(S_new)) S_new = S_floor;
        const double next = (1.0 - kSteadyStateDamping) * S + kSteadyStateDamping * S_new;
        const bool done = std::abs(next - S) <= kSteadyStateTol * std::abs(next);
        S = next;
        if (done) break;
    }
    const double sat = S / (1.0 + p.eps * S);
    N = (S / p.tau_p + p.Gamma * p.g * p.N0 * sat) / (p.Gamma * p.g * sat + p.Gamma * p.beta / p.tau_n);
    return {N, std::max(S, S_floor), 0.0};
}

double steady_state_phase_rate(double current, const LaserParams& p) {
    const SimState ss = steady_state(current, p, p.photon_floor());
    return rate_terms(ss, current, p).dphi;
}

}  // namespace phaseseed
