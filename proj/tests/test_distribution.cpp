#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "entrofit/distribution.hpp"
#include "helpers.hpp"

using Catch::Approx;
using namespace entrofit;

TEST_CASE("normalize divides by the population mean", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0, 3.0};
    s.counts = {1.0, 1.0, 1.0};
    const auto d = normalize(s);
    REQUIRE(d.w_bar == Approx(2.0));
    REQUIRE(d.omega[0] == Approx(0.5));
    REQUIRE(d.omega[1] == Approx(1.0));
    REQUIRE(d.omega[2] == Approx(1.5));
    REQUIRE(d.n_total == Approx(3.0));
}

TEST_CASE("normalize hand-checked two-bin case", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 6.0};
    s.counts = {3.0, 1.0};
    const auto d = normalize(s);
    REQUIRE(d.w_bar == Approx(2.25));
    REQUIRE(d.omega[0] == Approx(4.0 / 9.0).epsilon(1e-14));
    REQUIRE(d.omega[1] == Approx(8.0 / 3.0).epsilon(1e-14));
    REQUIRE(d.w_total == Approx(9.0));
    REQUIRE(d.n_total == Approx(4.0));
}

TEST_CASE("normalize defaults states to counts so nu is 1", "[distribution]") {
    BinnedSeries s;
    s.benefits = {10.0, 20.0, 40.0};
    s.counts = {7.0, 3.0, 2.0};
    const auto d = normalize(s);
    for (std::size_t k = 0; k < d.size(); ++k) {
        REQUIRE(d.nu[k] == Approx(1.0));
        REQUIRE(d.g[k] == Approx(s.counts[k]));
    }
}

TEST_CASE("normalize respects an explicit states column", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0};
    s.counts = {4.0, 2.0};
    s.states = {2.0, 2.0};
    const auto d = normalize(s);
    REQUIRE(d.nu[0] == Approx(2.0));
    REQUIRE(d.nu[1] == Approx(1.0));
}

TEST_CASE("normalize rejects invalid series", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0};
    s.counts = {0.0, 0.0};
    REQUIRE_THROWS_AS(normalize(s), InvalidInput);

    s.benefits = {-1.0, 2.0};
    s.counts = {1.0, 1.0};
    REQUIRE_THROWS_AS(normalize(s), InvalidInput);

    s.benefits = {2.0, 1.0};
    REQUIRE_THROWS_AS(normalize(s), InvalidInput);

    s.benefits = {1.0};
    s.counts = {1.0};
    REQUIRE_THROWS_AS(normalize(s), InvalidInput);
}

TEST_CASE("normalize is scale invariant in omega", "[distribution]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> scale(0.001, 1000.0);
    for (int trial = 0; trial < 20; ++trial) {
        BinnedSeries s;
        s.benefits = {3.0, 5.5, 9.0, 14.0};
        s.counts = {4.0, 2.0, 2.0, 1.0};
        const auto base = normalize(s);
        const double c = scale(rng);
        for (auto& b : s.benefits) b *= c;
        const auto scaled = normalize(s);
        for (std::size_t k = 0; k < base.size(); ++k) {
            REQUIRE(scaled.omega[k] == Approx(base.omega[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("smooth with window one is the identity", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0, 3.0, 4.0};
    s.counts = {1.0, 5.0, 2.0, 1.0};
    const auto d = normalize(s);
    const auto out = smooth(d, SmoothingConfig{1, 3});
    REQUIRE(out.nu == d.nu);
}

TEST_CASE("smooth leaves a constant occupation unchanged", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0, 3.0, 4.0, 5.0};
    s.counts = {2.0, 2.0, 2.0, 2.0, 2.0};
    const auto d = normalize(s);
    const auto out = smooth(d, SmoothingConfig{3, 2});
    for (std::size_t k = 0; k < d.size(); ++k) {
        REQUIRE(out.nu[k] == Approx(d.nu[k]).epsilon(1e-13));
    }
}

TEST_CASE("smooth spreads a spike over the truncated window", "[distribution]") {
    // Single spike of mass 3 on unit states: the window-3 average is
    // (0,1,1,1,0) and already carries the full mass, so rescale is a no-op.
    auto d = BenefitDistribution::create({0.2, 0.6, 1.0, 1.4, 1.8},
                                         {0.0, 0.0, 3.0, 0.0, 0.0},
                                         {1.0, 1.0, 1.0, 1.0, 1.0});
    const auto out = smooth(d, SmoothingConfig{3, 1});
    REQUIRE(out.nu[0] == Approx(0.0).margin(1e-15));
    REQUIRE(out.nu[1] == Approx(1.0).epsilon(1e-13));
    REQUIRE(out.nu[2] == Approx(1.0).epsilon(1e-13));
    REQUIRE(out.nu[3] == Approx(1.0).epsilon(1e-13));
    REQUIRE(out.nu[4] == Approx(0.0).margin(1e-15));
}

TEST_CASE("smooth rejects a window wider than the data", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0, 3.0};
    s.counts = {1.0, 1.0, 1.0};
    const auto d = normalize(s);
    REQUIRE_THROWS_AS(smooth(d, SmoothingConfig{5, 1}), InvalidInput);
    REQUIRE_THROWS_AS(smooth(d, SmoothingConfig{2, 1}), InvalidInput);
    REQUIRE_THROWS_AS(smooth(d, SmoothingConfig{3, 0}), InvalidInput);
}

TEST_CASE("smooth preserves the population for any window and passes", "[distribution][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = testutil::random_distribution(rng);
        std::uniform_int_distribution<int> draw_window(0, static_cast<int>(d.size() - 1) / 2);
        std::uniform_int_distribution<int> draw_passes(1, 4);
        const SmoothingConfig cfg{2 * draw_window(rng) + 1, draw_passes(rng)};
        const auto out = smooth(d, cfg);
        KahanSum before, after;
        for (std::size_t k = 0; k < d.size(); ++k) {
            before.add(d.population(k));
            after.add(out.population(k));
        }
        REQUIRE(std::abs(after.value() - before.value()) / d.n_total < 1e-12);
    }
}

TEST_CASE("detect_peak picks the occupation maximum", "[distribution]") {
    auto d = BenefitDistribution::create({0.5, 1.0, 1.5}, {1.0, 5.0, 2.0}, {1.0, 1.0, 2.0 / 3.0});
    const auto peak = detect_peak(d);
    REQUIRE(peak.omega_p == Approx(1.0));
    REQUIRE(peak.index == 1);
    REQUIRE(peak.mode == PeakMode::detected);
}

TEST_CASE("detect_peak breaks ties toward the smaller omega", "[distribution]") {
    auto d = testutil::balanced_distribution({0.5, 1.0, 1.5}, {4.0, 4.0, 1.0});
    const auto peak = detect_peak(d);
    REQUIRE(peak.index == 0);
    REQUIRE(peak.omega_p == Approx(0.5));
}

TEST_CASE("detect_peak pinned mode reports the first bin", "[distribution]") {
    auto d = BenefitDistribution::create({0.5, 1.0, 1.5}, {1.0, 5.0, 2.0}, {1.0, 1.0, 2.0 / 3.0});
    const auto peak = detect_peak(d, true);
    REQUIRE(peak.index == 0);
    REQUIRE(peak.omega_p == Approx(0.5));
    REQUIRE(peak.mode == PeakMode::pinned_to_minimum);
}

TEST_CASE("detect_peak ignores uniform occupation rescaling", "[distribution][property]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = testutil::random_distribution(rng);
        const auto base = detect_peak(d);
        auto scaled = d;
        for (auto& v : scaled.nu) v *= 37.5;
        scaled.n_total *= 37.5;
        scaled.w_total *= 37.5;
        REQUIRE(detect_peak(scaled).index == base.index);
    }
}

TEST_CASE("cpf counts population up to and including omega", "[distribution]") {
    BinnedSeries s;
    s.benefits = {1.0, 2.0, 3.0, 4.0};
    s.counts = {1.0, 1.0, 1.0, 1.0};
    const auto d = normalize(s);
    REQUIRE(cpf(d, d.omega[1]) == Approx(0.5));
    REQUIRE(cpf(d, d.omega.back()) == Approx(1.0));
    REQUIRE(cpf(d, d.omega.back() + 1.0) == Approx(1.0));
    REQUIRE(cpf(d, d.omega.front() - 0.1) == Approx(0.0).margin(0.0));
}

TEST_CASE("cpf reaches one at the top of any normalized series", "[distribution][property]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = testutil::random_distribution(rng);
        REQUIRE(cpf(d, d.omega.back()) == Approx(1.0).epsilon(1e-12));
    }
}
