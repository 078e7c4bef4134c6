#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "golden_values.hpp"
#include "phaseseed/errors.hpp"
#include "phaseseed/qrng.hpp"
#include "phaseseed/rng.hpp"
#include "phaseseed/stats.hpp"

using namespace phaseseed;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("delayed interference of equal pulses") {
    const std::vector<Complex> same{{1, 0}, {1, 0}, {-1, 0}, {0, 1}};
    const auto I = interfere_delayed(same);
    REQUIRE(I.size() == 3);
    CHECK(I[0] == doctest::Approx(1.0));
    CHECK(I[1] == doctest::Approx(0.0));
    CHECK(I[2] == doctest::Approx(0.5));
    CHECK(I == serial::interfere_delayed(same));
    const auto two = interfere_two_sources(std::vector<Complex>{{2, 0}}, std::vector<Complex>{{-2, 0}});
    CHECK(two[0] == doctest::Approx(0.0));
}

TEST_CASE("normalized interference recovers (1 + cos dphi) / 2") {
    std::vector<Complex> a, b;
    std::vector<double> expect;
    for (int i = 0; i < 20; ++i) {
        const double d = -pi + 0.3 * i;
        a.push_back(std::polar(1.0 + 0.1 * i, 0.2));
        b.push_back(std::polar(0.5 + 0.05 * i, 0.2 + d));
        expect.push_back(0.5 * (1.0 + std::cos(d)));
    }
    a.push_back({0, 0});
    b.push_back({1, 0});
    const auto x = normalized_interference(a, b);
    REQUIRE(x.size() == expect.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("arcsine cdf") {
    CHECK(arcsine_cdf(0.0) == 0.0);
    CHECK(arcsine_cdf(1.0) == doctest::Approx(1.0));
    CHECK(arcsine_cdf(0.5) == doctest::Approx(0.5));
    CHECK(arcsine_cdf(0.1) == doctest::Approx(golden::arcsine_cdf_01).epsilon(1e-14));
    CHECK(arcsine_cdf(0.9) == doctest::Approx(golden::arcsine_cdf_09).epsilon(1e-14));
    // Uniform phases produce arcsine-distributed interference.
    RandomStream rng(8);
    std::vector<double> x(20000);
    for (auto& v : x) v = 0.5 * (1 + std::cos(2 * pi * rng.uniform()));
    CHECK(ks_distance(x, arcsine_cdf) < 0.02);
}

TEST_CASE("adc quantisation") {
    AdcConfig c{4, 1.0, 0.0, 0};
    const std::vector<double> I{-0.1, 0.0, 0.0624, 0.0626, 0.5, 0.99, 1.0, 3.0};
    const auto codes = adc_sample(I, c);
    CHECK(codes == std::vector<std::uint16_t>{0, 0, 0, 1, 8, 15, 15, 15});
    CHECK(codes == serial::adc_sample(I, c));
    AdcConfig off{4, 2.0, 1.0, 0};
    CHECK(adc_sample(std::vector<double>{2.0}, off)[0] == 8);
    CHECK_THROWS_AS((AdcConfig{0, 1.0, 0.0, 0}.validate()), ConfigError);
    CHECK_THROWS_AS((AdcConfig{8, 0.0, 0.0, 0}.validate()), ConfigError);
    CHECK_THROWS_AS((AdcConfig{8, 1.0, 0.0, 9}.validate()), ConfigError);
    CHECK(calibrate_full_scale(I) == 3.0);
}

TEST_CASE("parallel adc equals serial on a large record") {
    RandomStream rng(2);
    std::vector<double> I(100000);
    for (auto& v : I) v = rng.uniform();
    const AdcConfig c{16, 1.0, 0.0, 12};
    CHECK(adc_sample(I, c) == serial::adc_sample(I, c));
    std::vector<Complex> z(100000);
    for (auto& v : z) v = std::polar(1.0, 2 * pi * rng.uniform());
    CHECK(interfere_delayed(z, 3) == serial::interfere_delayed(z, 3));
}

TEST_CASE("min-entropy") {
    std::vector<std::uint16_t> flat(1000);
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = static_cast<std::uint16_t>(i % 4);
    const auto r = min_entropy(flat, 2);
    CHECK(r.min_entropy == doctest::Approx(2.0));
    CHECK(r.histogram == std::vector<std::size_t>{250, 250, 250, 250});
    std::vector<std::uint16_t> skew(1000, 0);
    for (std::size_t i = 0; i < 250; ++i) skew[i] = 1;
    CHECK(min_entropy(skew, 1).min_entropy == doctest::Approx(-std::log2(0.75)));
    CHECK_THROWS(min_entropy(std::vector<std::uint16_t>(999, 0), 1));
    std::ostringstream os;
    write_histogram_csv(os, r);
    CHECK(os.str().rfind("code,count", 0) == 0);
}

TEST_CASE("bit packing is LSB first") {
    const std::vector<std::uint16_t> codes{0b101, 0b011, 0b111};
    const auto b = pack_codes(codes, 3);
    // bits: 1,0,1, 1,1,0, 1,1,1 -> 0b11011101, 0b1
    REQUIRE(b.size() == 2);
    CHECK(b[0] == 0b11011101);
    CHECK(b[1] == 0b00000001);
    const auto m = monobit(b);
    CHECK(m.total == 16);
    CHECK(m.ones == 7);
    CHECK(m.bias == doctest::Approx(7.0 / 16 - 0.5));
}
