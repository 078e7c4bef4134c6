#include "phaseseed/trajectory.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace phaseseed {

void Trajectory::reserve(std::size_t n) {
    I.reserve(n);
    N.reserve(n);
    S.reserve(n);
    phi.reserve(n);
    P.reserve(n);
}

void Trajectory::push(double current, const SimState& s) {
    I.push_back(current);
    N.push_back(s.N);
    S.push_back(s.S);
    phi.push_back(s.phi);
    P.push_back(output_power(s.S, params));
}

SimState resolve_initial(const InitialState& init, const DriveWaveform& drive, const LaserParams& p,
                         const NoiseConfig& noise) {
    if (init) {
        if (!(init->N >= 0.0) || !std::isfinite(init->S) || !std::isfinite(init->phi)) {
            throw DomainError("initial state: N must be >= 0 and all fields finite");
        }
        SimState s = *init;
        s.S = std::max(s.S, noise.floor_for(p));
        return s;
    }
    return steady_state(drive[0], p, noise.floor_for(p));
}

Trajectory simulate(const DriveWaveform& drive, const LaserParams& p, const InitialState& init,
                    const NoiseConfig& noise) {
    p.validate();
    if (noise.S_floor && !(*noise.S_floor > 0.0)) throw DomainError("noise: S_floor must be > 0");
    Trajectory traj;
    traj.dt = drive.dt();
    traj.t0 = drive.t0();
    traj.rng_seed = noise.seed;
    traj.params = p;
    traj.reserve(drive.size());
    integrate(drive, p, resolve_initial(init, drive, p, noise), noise,
              [&traj](std::size_t, double current, const SimState& s) { traj.push(current, s); });
    return traj;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t decimation) {
    if (decimation == 0) decimation = 1;
    os << "t_s,I_A,N_per_m3,S_per_m3,P_W,phi_rad\n";
    char line[256];
    for (std::size_t k = 0; k < traj.size(); k += decimation) {
        const int n = std::snprintf(line, sizeof line, "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", traj.time(k),
                                    traj.I[k], traj.N[k], traj.S[k], traj.P[k], traj.phi[k]);
        os.write(line, n);
    }
}

Trajectory read_trajectory_csv(std::istream& is, const LaserParams& p) {
    std::string line;
    if (!std::getline(is, line) || line != "t_s,I_A,N_per_m3,S_per_m3,P_W,phi_rad") {
        throw ConfigError("trajectory csv: unexpected header");
    }
    Trajectory traj;
    traj.params = p;
    std::vector<double> t;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        double v[6];
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4], &v[5]) != 6) {
            throw ConfigError("trajectory csv: malformed row " + std::to_string(row));
        }
        t.push_back(v[0]);
        traj.I.push_back(v[1]);
        traj.N.push_back(v[2]);
        traj.S.push_back(v[3]);
        traj.P.push_back(v[4]);
        traj.phi.push_back(v[5]);
    }
    if (t.size() < 2) throw ConfigError("trajectory csv: need at least two rows");
    traj.t0 = t.front();
    traj.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    return traj;
}

std::vector<double> instantaneous_chirp(const Trajectory& traj) {
    const std::size_t n = traj.size();
    if (n < 2) throw DomainError("instantaneous_chirp: need at least two samples");
    std::vector<double> out(n);
    const double scale = 1.0 / (constants::two_pi * traj.dt);
    out[0] = (traj.phi[1] - traj.phi[0]) * scale;
    out[n - 1] = (traj.phi[n - 1] - traj.phi[n - 2]) * scale;
    for (std::size_t k = 1; k + 1 < n; ++k) out[k] = 0.5 * (traj.phi[k + 1] - traj.phi[k - 1]) * scale;
    return out;
}

std::vector<double> chirp_from_power(const std::vector<double>& P, double dt, const LaserParams& p) {
    const std::size_t n = P.size();
    if (n < 2) throw DomainError("chirp_from_power: need at least two samples");
    const double adiabatic = 2.0 * p.Gamma * p.eps / (p.V * p.eta * constants::planck * p.nu);
    const double pre = p.alpha / (2.0 * constants::two_pi);
    std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
    auto log_at = [&P](std::size_t k) { return std::log(P[k]); };
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k + 1 == n ? k : k + 1;
        if (!(P[lo] > 0.0) || !(P[hi] > 0.0) || !(P[k] > 0.0)) continue;
        const double dlog = (log_at(hi) - log_at(lo)) / (dt * static_cast<double>(hi - lo));
        out[k] = pre * (dlog + adiabatic * P[k]);
    }
    return out;
}

}  // namespace phaseseed
