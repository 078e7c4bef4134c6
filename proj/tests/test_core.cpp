#include <doctest.h>

#include <cmath>
#include <sstream>

#include "golden_values.hpp"
#include "phaseseed/dynamics.hpp"
#include "phaseseed/errors.hpp"
#include "phaseseed/params.hpp"
#include "phaseseed/rng.hpp"
#include "phaseseed/stats.hpp"
#include "phaseseed/trajectory.hpp"

using namespace phaseseed;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("philox matches known answers") {
    for (const auto& kat : golden::philox_kat) {
        const std::uint64_t key = std::uint64_t{kat[5]} << 32 | kat[4];
        const std::uint64_t lo = std::uint64_t{kat[1]} << 32 | kat[0];
        const std::uint64_t hi = std::uint64_t{kat[3]} << 32 | kat[2];
        const auto out = Philox4x32(key)(lo, hi);
        for (int i = 0; i < 4; ++i) CHECK(out[i] == kat[6 + i]);
    }
}

TEST_CASE("derived seeds depend on seed and component") {
    CHECK(derive_seed(1, "primary") == derive_seed(1, "primary"));
    CHECK(derive_seed(1, "primary") != derive_seed(1, "secondary"));
    CHECK(derive_seed(1, "primary") != derive_seed(2, "primary"));
    static_assert(derive_seed(7, "x") == derive_seed(7, "x"));
}

TEST_CASE("random stream uniforms lie in the open unit interval") {
    RandomStream rng(3);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("step normals have unit variance and no correlation") {
    const Philox4x32 gen(11);
    const int n = 200000;
    double m[3] = {}, v[3] = {}, c01 = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto x = step_normals(gen, static_cast<std::uint64_t>(k));
        for (int i = 0; i < 3; ++i) {
            m[i] += x[i];
            v[i] += x[i] * x[i];
        }
        c01 += x[0] * x[1];
    }
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(m[i] / n) < 0.01);
        CHECK(v[i] / n == doctest::Approx(1.0).epsilon(0.02));
    }
    CHECK(std::abs(c01 / n) < 0.01);
}

TEST_CASE("table units round trip") {
    const TableUnits t = reference_dfb_table();
    const TableUnits back = to_table_units(from_table_units(t));
    CHECK(back.tau_n_ns == doctest::Approx(t.tau_n_ns));
    CHECK(back.g_1e6_cm3_per_s == doctest::Approx(t.g_1e6_cm3_per_s));
    CHECK(back.V_1e11_cm3 == doctest::Approx(t.V_1e11_cm3));
    CHECK(back.kappa_1e11_per_s == doctest::Approx(t.kappa_1e11_per_s));
    const LaserParams p = reference_dfb();
    CHECK(p.tau_p == doctest::Approx(0.74e-12));
    CHECK(p.eps == doctest::Approx(1.18e-23));
    CHECK(p.N0 == doctest::Approx(0.85e24));
    CHECK(p.V == doctest::Approx(1.72e-17));
}

TEST_CASE("reference threshold current") {
    const LaserParams p = reference_dfb();
    CHECK(rel(threshold_current(p), golden::threshold_current) < 1e-12);
    CHECK(rel(p.threshold_density(), golden::threshold_density) < 1e-12);
    CHECK(threshold_current(p) * 1e3 == doctest::Approx(17.8).epsilon(0.01));
}

TEST_CASE("invalid laser parameters are rejected") {
    LaserParams p = reference_dfb();
    p.tau_p = -1e-12;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = reference_dfb();
    p.Gamma = 1.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = reference_dfb();
    p.V = std::nan("");
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("steady state is a fixed point") {
    const LaserParams p = reference_dfb();
    const double I = 2.0 * threshold_current(p);
    const SimState ss = steady_state(I, p, p.photon_floor());
    CHECK(rel(ss.N, golden::steady_N_2ith) < 1e-9);
    CHECK(rel(ss.S, golden::steady_S_2ith) < 1e-9);
    const Rates r = derivatives(ss, I, p);
    CHECK(std::abs(r.dN) * p.tau_n / ss.N < 1e-9);
    CHECK(std::abs(r.dS) * p.tau_p / ss.S < 1e-9);
    CHECK(rel(steady_state_phase_rate(I, p), golden::phase_rate_2ith) < 1e-9);
    CHECK(rel(steady_state_phase_rate(10.0 * threshold_current(p), p), golden::phase_rate_10ith) < 1e-9);
    CHECK(rel(output_power(ss.S, p), golden::power_2ith) < 1e-9);
}

TEST_CASE("below threshold the steady state sits on the floor") {
    const LaserParams p = reference_dfb();
    const SimState ss = steady_state(0.5 * threshold_current(p), p, p.photon_floor());
    CHECK(ss.S == p.photon_floor());
    CHECK(ss.N < p.threshold_density());
}

TEST_CASE("noise-off integration matches an independent Euler loop") {
    const LaserParams p = reference_dfb();
    const DriveWaveform drive(1e-13, std::vector<double>(5001, 2.0 * threshold_current(p)));
    const NoiseConfig off;
    const Trajectory t = simulate(drive, p, SimState{0.0, p.photon_floor(), 0.0}, off);
    const std::size_t k = 5000;
    CHECK(rel(t.N[k], golden::euler_N) < 1e-9);
    CHECK(rel(t.S[k], golden::euler_S) < 1e-6);
    CHECK(rel(t.phi[k], golden::euler_phi) < 1e-9);
}

TEST_CASE("state clamps hold under noise") {
    const LaserParams p = reference_dfb();
    const DriveWaveform drive(1e-13, std::vector<double>(20000, 0.0));
    NoiseConfig n;
    n.enabled = true;
    n.seed = 5;
    const Trajectory t = simulate(drive, p, SimState{1e23, 1e18, 0.0}, n);
    for (std::size_t k = 0; k < t.size(); ++k) {
        REQUIRE(t.S[k] >= p.photon_floor());
        REQUIRE(t.N[k] >= 0.0);
    }
}

TEST_CASE("non-finite states raise a blowup") {
    const LaserParams p = reference_dfb();
    const Stepper s(p, 1e-13, NoiseConfig{});
    CHECK_THROWS_AS(s(SimState{std::nan(""), 1e20, 0.0}, 0.01, 3), IntegrationBlowup);
    try {
        s(SimState{1e24, std::numeric_limits<double>::infinity(), 0.0}, 0.01, 7);
    } catch (const IntegrationBlowup& e) {
        CHECK(e.step_index() == 7);
    }
}

TEST_CASE("noisy runs are reproducible from the seed") {
    const LaserParams p = reference_dfb();
    const DriveWaveform drive(1e-13, std::vector<double>(5000, 2.0 * threshold_current(p)));
    NoiseConfig n;
    n.enabled = true;
    n.seed = 99;
    const Trajectory a = simulate(drive, p, {}, n);
    const Trajectory b = simulate(drive, p, {}, n);
    CHECK(a.S == b.S);
    CHECK(a.phi == b.phi);
    n.seed = 100;
    const Trajectory c = simulate(drive, p, {}, n);
    CHECK(a.phi != c.phi);
}

TEST_CASE("trajectory csv round trip") {
    const LaserParams p = reference_dfb();
    const DriveWaveform drive(1e-13, std::vector<double>(300, 2.0 * threshold_current(p)));
    const Trajectory t = simulate(drive, p, {}, NoiseConfig{});
    std::stringstream ss;
    write_trajectory_csv(ss, t);
    const Trajectory back = read_trajectory_csv(ss, p);
    REQUIRE(back.size() == t.size());
    CHECK(back.dt == doctest::Approx(t.dt));
    for (std::size_t k = 0; k < t.size(); k += 37) {
        CHECK(back.S[k] == doctest::Approx(t.S[k]).epsilon(1e-11));
        CHECK(back.phi[k] == doctest::Approx(t.phi[k]).epsilon(1e-11));
    }
    std::stringstream bad("t,I\n");
    CHECK_THROWS_AS(read_trajectory_csv(bad, p), ConfigError);
}

TEST_CASE("langevin increments match their diffusion coefficients") {
    const LaserParams p = reference_dfb();
    const double dt = 1e-13;
    const SimState s{4.85e24, 1.3e21, 0.0};
    const int n = 100000;
    double vS = 0.0, vphi = 0.0, vN = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto F = langevin_increments(s, p, dt, 17, static_cast<std::uint64_t>(k));
        vS += F.F_S * F.F_S;
        vphi += F.F_phi * F.F_phi;
        vN += F.F_N * F.F_N;
    }
    const double sp = p.Gamma * p.beta * s.N / p.tau_n;
    // Per-step variances of the white-noise forces sampled at dt.
    const double eS = 2.0 * sp * s.S / dt;
    const double ephi = sp / (2.0 * s.S) / dt;
    const double eN = 2.0 * s.N / (p.V * p.tau_n) / dt + eS / (p.Gamma * p.Gamma);
    CHECK(vS / n == doctest::Approx(eS).epsilon(0.05));
    CHECK(vphi / n == doctest::Approx(ephi).epsilon(0.05));
    CHECK(vN / n == doctest::Approx(eN).epsilon(0.05));
}

TEST_CASE("circular statistics") {
    const std::vector<double> tight{0.1, 0.1, 0.1};
    const auto c = circular_summary(tight);
    CHECK(c.mean == doctest::Approx(0.1));
    CHECK(c.resultant == doctest::Approx(1.0));
    CHECK(c.std == doctest::Approx(0.0).epsilon(1e-6));
    const std::vector<double> wrap{3.1, -3.1};
    CHECK(std::abs(circular_summary(wrap).mean) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
    const std::vector<double> opposite{0.0, std::numbers::pi};
    CHECK(circular_summary(opposite).resultant == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi-square quantiles") {
    CHECK(chi_square_critical(15, 0.01) == doctest::Approx(golden::chi2_crit_15_001).epsilon(1e-10));
    CHECK(chi_square_critical(7, 0.05) == doctest::Approx(golden::chi2_crit_7_005).epsilon(1e-10));
    CHECK(chi_square_sf(20.0, 15) == doctest::Approx(golden::chi2_sf_20_15).epsilon(1e-10));
}

TEST_CASE("summary statistics") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(mean(v) == 2.5);
    CHECK(sample_std(v) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    const std::vector<double> u{0.1, 0.2, 0.3, 0.4};
    CHECK(ks_distance(u, [](double x) { return x; }) == doctest::Approx(0.6));
}
