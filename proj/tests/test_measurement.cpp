#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "phaseseed/errors.hpp"
#include "phaseseed/measurement.hpp"
#include "phaseseed/rng.hpp"
#include "phaseseed/stats.hpp"

using namespace phaseseed;

namespace {

constexpr double pi = std::numbers::pi;

/// Piecewise-constant field: pulse j holds amplitude z[j] over its whole period.
std::vector<Complex> blocks(const std::vector<Complex>& z, std::size_t samples_per_pulse) {
    std::vector<Complex> f;
    for (const auto& v : z) f.insert(f.end(), samples_per_pulse, v);
    return f;
}

std::vector<PulseAmplitude> train(const std::vector<Complex>& z) {
    std::vector<PulseAmplitude> a(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) a[j] = {j / 2, static_cast<int>(j % 2), z[j]};
    return a;
}

}  // namespace

TEST_CASE("pulse grid from the clock") {
    const auto g = PulseGrid::from_clock(ClockConfig{}, 0.4, -1e-10);
    CHECK(g.period == doctest::Approx(0.5e-9));
    CHECK(g.slots_per_symbol == 2);
    CHECK(g.window_fraction == 0.4);
    PulseGrid bad;
    bad.window_fraction = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("pulse amplitudes average each gate") {
    const std::vector<Complex> z{{1, 0}, {0, 2}, {-3, 0}, {0, -4}};
    const auto field = blocks(z, 100);
    PulseGrid g;
    g.period = 100e-13;
    const auto a = pulse_amplitudes(field, 1e-13, 0.0, g);
    REQUIRE(a.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(std::abs(a[j].amplitude - z[j]) < 1e-12);
        CHECK(a[j].symbol_index == j / 2);
        CHECK(a[j].slot_index == static_cast<int>(j % 2));
    }
    CHECK(serial::pulse_amplitudes(field, 1e-13, 0.0, g).size() == 4);
}

TEST_CASE("streamed accumulator equals the batch gates") {
    RandomStream rng(5);
    std::vector<Complex> field(5321);
    for (auto& v : field) v = {rng.uniform(), rng.uniform() - 0.5};
    PulseGrid g;
    g.period = 300e-13;
    g.window_fraction = 0.37;
    g.gate_delay = 40e-13;
    const auto batch = pulse_amplitudes(field, 1e-13, 2e-13, g);
    PulseAccumulator acc(g, 1e-13, 2e-13);
    for (std::size_t k = 0; k < field.size(); ++k) acc.add(k, field[k]);
    const auto& streamed = acc.amplitudes();
    REQUIRE(streamed.size() == batch.size());
    for (std::size_t j = 0; j < batch.size(); ++j) {
        CHECK(std::abs(streamed[j].amplitude - batch[j].amplitude) < 1e-12);
    }
}

TEST_CASE("parallel kernels equal the serial references") {
    RandomStream rng(11);
    std::vector<Complex> field(20000);
    for (auto& v : field) v = std::polar(rng.uniform(), 2 * pi * rng.uniform());
    PulseGrid g;
    g.period = 250e-13;
    const auto a = pulse_amplitudes(field, 1e-13, 0.0, g);
    const auto b = serial::pulse_amplitudes(field, 1e-13, 0.0, g);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a[j].amplitude == b[j].amplitude);
    const auto da = demodulate(a);
    const auto db = serial::demodulate(b);
    REQUIRE(da.points.size() == db.points.size());
    for (std::size_t j = 0; j < da.points.size(); ++j) {
        CHECK(da.points[j].I == db.points[j].I);
        CHECK(da.points[j].Q == db.points[j].Q);
    }
    Trajectory t;
    t.dt = 1e-13;
    for (int k = 0; k < 1000; ++k) t.push(0.0, {1.0, 1.0 + k, 0.01 * k});
    CHECK(complex_field(t) == serial::complex_field(t));
}

TEST_CASE("demodulation recovers the phase difference") {
    const auto a = train({std::polar(2.0, 0.3), std::polar(1.0, 0.3 + pi / 2), std::polar(5.0, -1.0),
                          std::polar(3.0, -1.0 + pi)});
    const auto d = demodulate(a);
    REQUIRE(d.points.size() == 3);
    CHECK(d.points[0].phase == doctest::Approx(pi / 2));
    CHECK(d.points[0].slot_index == 1);
    CHECK(std::hypot(d.points[1].I, d.points[1].Q) == doctest::Approx(1.0));
    CHECK(std::abs(std::abs(d.points[2].phase) - pi) < 1e-9);
    CHECK(d.no_clicks == 0);
    CHECK(select_slot(d.points, 1).size() == 2);
    CHECK(select_slot(d.points, 0).size() == 1);
    CHECK_THROWS(demodulate(a, 0));
}

TEST_CASE("empty slots give no-click points") {
    const auto a = train({{1, 0}, {0, 0}, {1, 0}, {1e-6, 0}, {1, 0}, {0, 1}});
    const double thr = empty_slot_threshold(a);
    CHECK(thr == doctest::Approx(0.01));
    const auto d = demodulate(a);
    CHECK(d.no_clicks == 4);
    CHECK_FALSE(d.points[0].click);
    CHECK(d.points[4].click);
    CHECK(d.points[4].phase == doctest::Approx(pi / 2));
}

TEST_CASE("constellation assignment and errors") {
    std::vector<IQPoint> pts;
    const std::vector<double> phases{0.05, pi - 0.1, -pi + 0.02, 0.7};
    for (std::size_t i = 0; i < phases.size(); ++i) {
        pts.push_back({i, 1, std::cos(phases[i]), std::sin(phases[i]), phases[i], true});
    }
    pts.push_back({4, 1, 0, 0, 0, false});
    const std::vector<double> targets{0.0, pi};
    const std::vector<int> intended{0, 1, 1, 1, 0};
    const auto r = constellation(pts, targets, intended);
    CHECK(r.assignment == std::vector<int>{0, 1, 1, 0, -1});
    CHECK(r.points == 4);
    CHECK(r.symbol_errors == 1);
    CHECK(r.clusters[1].count == 2);
    CHECK(std::abs(std::remainder(r.clusters[1].mean_angle - (pi - 0.04), 2 * pi)) < 1e-3);
    const std::vector<double> dup{0.0, 2 * pi};
    CHECK_THROWS_AS(constellation(pts, dup), DomainError);
    // Ties go to the lower index.
    std::vector<IQPoint> tie{{0, 1, 0, 1, pi / 2, true}};
    CHECK(constellation(tie, targets).assignment[0] == 0);
}

TEST_CASE("visibility") {
    CHECK(visibility(1.0, 0.0) == 1.0);
    CHECK(visibility(3.0, 1.0) == 0.5);
    const auto coherent = train(std::vector<Complex>(100, {1.0, 1.0}));
    CHECK(fringe_visibility(coherent) == doctest::Approx(1.0));
    RandomStream rng(3);
    std::vector<Complex> z(20000);
    for (auto& v : z) v = std::polar(1.0, 2 * pi * rng.uniform());
    CHECK(fringe_visibility(train(z)) < 0.03);
    // Unequal amplitudes cap the visibility at 2 |a||b| / (|a|^2 + |b|^2).
    std::vector<Complex> uneq;
    for (int i = 0; i < 50; ++i) {
        uneq.push_back({1.0, 0});
        uneq.push_back({3.0, 0});
    }
    CHECK(fringe_visibility(train(uneq)) == doctest::Approx(0.6));
}

TEST_CASE("jitter from synthetic edges") {
    const double dt = 1e-12;
    const double period = 500e-12;
    const std::vector<double> delays{40.3e-12, 52.7e-12, 47.1e-12, 60.0e-12};
    std::vector<double> P(delays.size() * 500, 0.0);
    for (std::size_t j = 0; j < delays.size(); ++j) {
        for (std::size_t k = 0; k < 500; ++k) {
            const double t = static_cast<double>(k) * dt - delays[j];
            // Linear ramp from 0 to 1 mW over 10 ps starting 5 ps before the crossing.
            P[j * 500 + k] = 1e-3 * std::clamp((t + 5e-12) / 10e-12, 0.0, 1.0);
        }
    }
    const auto r = jitter_stats(P, dt, 0.0, period);
    REQUIRE(r.delays.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) CHECK(r.delays[j] == doctest::Approx(delays[j]).epsilon(1e-6));
    CHECK(r.std == doctest::Approx(sample_std(delays)).epsilon(1e-6));
    CHECK(r.excluded == 0);
    const auto r2 = jitter_stats(P, dt, 0.0, period, 0.0, 0.5, 2e-3);
    CHECK(r2.excluded == 4);
    CHECK(r2.delays.empty());
}

TEST_CASE("uniformity test") {
    RandomStream rng(17);
    std::vector<double> uniform(20000);
    for (auto& v : uniform) v = -pi + 2 * pi * rng.uniform();
    const auto u = phase_uniformity_test(uniform);
    CHECK(u.critical == doctest::Approx(30.5779).epsilon(1e-4));
    CHECK(u.pass);
    std::vector<double> clustered(20000);
    for (auto& v : clustered) v = 0.3 * (rng.uniform() - 0.5);
    CHECK_FALSE(phase_uniformity_test(clustered).pass);
}

TEST_CASE("iq csv and report formatting") {
    std::vector<IQPoint> pts{{0, 1, 1.0, 0.0, 0.0, true}, {1, 1, 0, 0, 0, false}};
    std::ostringstream os;
    write_iq_csv(os, pts, std::vector<int>{0, -1});
    const std::string s = os.str();
    CHECK(s.rfind("symbol_index,I,Q,phase_rad,assigned_target_index\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 2);
    Report r;
    r.add("a", std::size_t{3});
    r.add("b", true);
    std::ostringstream ro;
    r.write(ro);
    CHECK(ro.str() == "a: 3\nb: true\n");
}
