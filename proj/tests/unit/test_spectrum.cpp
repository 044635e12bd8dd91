#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include <specgame/allocation_grid.hpp>
#include <specgame/error.hpp>
#include <specgame/random.hpp>
#include <specgame/spectrum.hpp>

using namespace specgame;

namespace {

// Classic sorted-floor water-filling: fill the m lowest floors while the
// level stays above the next floor.
std::vector<double> sorted_water_fill(const std::vector<double>& gain, const std::vector<double>& noise,
                                      double budget, double df) {
    std::vector<std::pair<double, std::size_t>> floors;
    for (std::size_t k = 0; k < gain.size(); ++k) {
        if (gain[k] > 0.0) floors.emplace_back(noise[k] / gain[k], k);
    }
    std::sort(floors.begin(), floors.end());
    double level = 0.0;
    double sum = 0.0;
    for (std::size_t m = 1; m <= floors.size(); ++m) {
        sum += floors[m - 1].first;
        const double candidate = (budget / df + sum) / static_cast<double>(m);
        if (m == floors.size() || candidate <= floors[m].first) {
            level = candidate;
            break;
        }
    }
    std::vector<double> p(gain.size(), 0.0);
    for (const auto& [floor, k] : floors) p[k] = std::max(0.0, level - floor);
    return p;
}

ChannelSet coupled_gains() {
    ChannelSet ch(2, 2);
    ch.set_gains(0, 0, std::vector<double>{1.0, 1.0});
    ch.set_gains(1, 1, std::vector<double>{1.0, 1.0});
    ch.set_gains(0, 1, std::vector<double>{0.8, 0.4});
    ch.set_gains(1, 0, std::vector<double>{0.4, 0.4});
    return ch;
}

}  // namespace

TEST_CASE("frequency grid") {
    FrequencyGrid g(7, 3.5);
    CHECK(g.bins() == 7);
    CHECK(g.bin_width() == doctest::Approx(0.5));
    CHECK(std::abs(g.bin_width() * 7 - 3.5) <= 1e-12 * 3.5);
    CHECK_THROWS_AS(FrequencyGrid(0, 1.0), Error);
    CHECK_THROWS_AS(FrequencyGrid(2, 0.0), Error);
}

TEST_CASE("domain type validation") {
    CHECK_THROWS_AS(NoiseProfile(1, 2, 0.0), Error);
    CHECK_THROWS_AS(PowerBudget({1.0, -1.0}), Error);
    CHECK_THROWS_AS(ChannelSet(2, 2, std::vector<double>(7, 1.0)), Error);
    CHECK_THROWS_AS(ChannelSet(1, 2, std::vector<double>{1.0, -0.5}), Error);
    PowerAllocation a(1, 2, {3.0, 7.0});
    const FrequencyGrid g(2, 2.0);
    CHECK(a.feasible(PowerBudget({10.0}), g));
    CHECK_FALSE(a.feasible(PowerBudget({9.99}), g));
}

TEST_CASE("effective noise") {
    SUBCASE("single user sees only noise") {
        ChannelSet ch(1, 3, {1.0, 2.0, 3.0});
        PowerAllocation a(1, 3, {4.0, 4.0, 4.0});
        const auto e = effective_noise(0, a, ch, NoiseProfile(1, 3, 1.0));
        CHECK(e == std::vector<double>{1.0, 1.0, 1.0});
    }
    SUBCASE("user 2 under user 1 concentrating") {
        PowerAllocation a(2, 2, {10.0, 0.0, 5.0, 5.0});
        const auto e = effective_noise(1, a, coupled_gains(), NoiseProfile(2, 2, 1.0));
        CHECK(e[0] == doctest::Approx(9.0));
        CHECK(e[1] == doctest::Approx(1.0));
    }
    SUBCASE("zero cross gains return the noise row") {
        ChannelSet ch(2, 2);
        ch.set_gains(0, 0, std::vector<double>{1.0, 1.0});
        ch.set_gains(1, 1, std::vector<double>{1.0, 1.0});
        NoiseProfile noise(2, 2, std::vector<double>{0.3, 0.7, 1.1, 1.3});
        PowerAllocation a(2, 2, {1.0, 2.0, 3.0, 4.0});
        const auto e = effective_noise(1, a, ch, noise);
        CHECK(e == std::vector<double>{1.1, 1.3});
    }
    SUBCASE("dimension mismatch") {
        PowerAllocation a(3, 2);
        CHECK_THROWS_AS(effective_noise(0, a, coupled_gains(), NoiseProfile(2, 2, 1.0)), Error);
    }
}

TEST_CASE("achievable rate") {
    const auto ch = coupled_gains();
    const NoiseProfile noise(2, 2, 1.0);
    const FrequencyGrid grid(2, 2.0);
    SUBCASE("concentrate against spread") {
        PowerAllocation a(2, 2, {10.0, 0.0, 5.0, 5.0});
        CHECK(achievable_rate(0, a, ch, noise, grid) == doctest::Approx(std::log2(1.0 + 10.0 / 3.0)).epsilon(1e-12));
        CHECK(std::abs(achievable_rate(0, a, ch, noise, grid) - 2.12) < 0.005);
    }
    SUBCASE("both concentrate") {
        PowerAllocation a(2, 2, {10.0, 0.0, 0.0, 10.0});
        const auto r = achievable_rates(a, ch, noise, grid);
        CHECK(r[0] == doctest::Approx(std::log2(11.0)));
        CHECK(r[1] == doctest::Approx(std::log2(11.0)));
    }
    SUBCASE("zero allocation") {
        CHECK(achievable_rate(0, PowerAllocation(2, 2), ch, noise, grid) == 0.0);
    }
    SUBCASE("monotone in own power, antitone in interference") {
        Rng rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            PowerAllocation a(2, 2);
            for (std::size_t n = 0; n < 2; ++n) {
                for (std::size_t k = 0; k < 2; ++k) a.row(n)[k] = 5.0 * rng.uniform();
            }
            const double base = achievable_rate(0, a, ch, noise, grid);
            for (std::size_t k = 0; k < 2; ++k) {
                auto up = a;
                up.row(0)[k] += 1e-6;
                CHECK(achievable_rate(0, up, ch, noise, grid) >= base);
                auto hurt = a;
                hurt.row(1)[k] += 1e-6;
                CHECK(achievable_rate(0, hurt, ch, noise, grid) <= base);
            }
        }
    }
}

TEST_CASE("water_fill examples") {
    const FrequencyGrid g(2, 2.0);
    SUBCASE("symmetric") {
        const auto r = water_fill(std::vector<double>{1, 1}, std::vector<double>{1, 1}, 10.0, g);
        CHECK(r.psd[0] == doctest::Approx(5.0));
        CHECK(r.psd[1] == doctest::Approx(5.0));
    }
    SUBCASE("best response to a concentrating neighbour") {
        const auto r = water_fill(std::vector<double>{1, 1}, std::vector<double>{9, 1}, 10.0, g);
        CHECK(r.psd[0] == doctest::Approx(1.0));
        CHECK(r.psd[1] == doctest::Approx(9.0));
        CHECK(r.water_level == doctest::Approx(10.0));
    }
    SUBCASE("dead bin") {
        const auto r = water_fill(std::vector<double>{0, 1}, std::vector<double>{1, 1}, 4.0, g);
        CHECK(r.psd[0] == 0.0);
        CHECK(r.psd[1] == doctest::Approx(4.0));
    }
    SUBCASE("no usable spectrum") {
        try {
            water_fill(std::vector<double>{0, 0}, std::vector<double>{1, 1}, 4.0, g);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::no_usable_spectrum);
        }
    }
    SUBCASE("bad inputs") {
        CHECK_THROWS_AS(water_fill(std::vector<double>{1, 1}, std::vector<double>{1, 1}, 0.0, g), Error);
        CHECK_THROWS_AS(water_fill(std::vector<double>{1}, std::vector<double>{1, 1}, 1.0, g), Error);
    }
}

TEST_CASE("water_fill properties on random instances") {
    Rng rng(2024);
    for (int instance = 0; instance < 200; ++instance) {
        const std::size_t k = std::vector<std::size_t>{1, 2, 5, 16, 64}[instance % 5];
        const FrequencyGrid grid(k, 0.5 + 4.0 * rng.uniform());
        std::vector<double> gain(k), noise(k);
        for (std::size_t b = 0; b < k; ++b) {
            gain[b] = rng.uniform() < 0.1 && b > 0 ? 0.0 : 0.01 + 3.0 * rng.uniform();
            noise[b] = 0.05 + 2.0 * rng.uniform();
        }
        const double budget = 0.1 + 50.0 * rng.uniform();
        const auto r = water_fill(gain, noise, budget, grid);

        double used = 0.0;
        for (double p : r.psd) used += p * grid.bin_width();
        CHECK(std::abs(used - budget) <= 1e-9 * budget);

        for (std::size_t b = 0; b < k; ++b) {
            CHECK(r.psd[b] >= 0.0);
            if (gain[b] == 0.0) {
                CHECK(r.psd[b] == 0.0);
            } else if (r.psd[b] > 1e-12) {
                CHECK(std::abs(noise[b] / gain[b] + r.psd[b] - r.water_level) <= 1e-6);
            } else {
                CHECK(noise[b] / gain[b] >= r.water_level - 1e-6);
            }
        }

        const auto oracle = sorted_water_fill(gain, noise, budget, grid.bin_width());
        for (std::size_t b = 0; b < k; ++b) CHECK(r.psd[b] == doctest::Approx(oracle[b]).epsilon(1e-9).scale(budget));

        const double best = single_user_rate(r.psd, gain, noise, grid);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> p(k);
            double total = 0.0;
            for (auto& v : p) total += (v = -std::log(1.0 - rng.uniform()));
            for (auto& v : p) v *= budget / (total * grid.bin_width());
            CHECK(single_user_rate(p, gain, noise, grid) <= best + 1e-9);
        }
    }
}

TEST_CASE("multipath channels") {
    SUBCASE("single tap is flat") {
        const FrequencyGrid grid(8, 8.0);
        const auto ch = generate_multipath_channels(5, 2, grid, 1);
        for (std::size_t n = 0; n < 2; ++n) {
            for (std::size_t k = 0; k < 8; ++k) CHECK(ch.gain(n, n, k) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("tap power normalization") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto taps = generate_multipath_taps(seed, 2, 4);
            for (std::size_t i = 0; i < 2; ++i) {
                for (std::size_t j = 0; j < 2; ++j) {
                    double power = 0.0;
                    for (auto t : taps.pair(i, j)) power += std::norm(t);
                    CHECK(std::abs(power - (i == j ? 1.0 : 0.5)) <= 1e-12);
                }
            }
        }
    }
    SUBCASE("mean gain equals tap power (Parseval)") {
        const FrequencyGrid grid(16, 16.0);
        const auto ch = generate_multipath_channels(3, 2, grid, 4);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                const auto g = ch.gains(i, j);
                const double mean = std::accumulate(g.begin(), g.end(), 0.0) / 16.0;
                CHECK(mean == doctest::Approx(i == j ? 1.0 : 0.5).epsilon(1e-12));
            }
        }
    }
    SUBCASE("frequency response matches a direct DFT") {
        const FrequencyGrid grid(6, 6.0);
        const auto taps = generate_multipath_taps(9, 2, 3);
        const auto ch = channels_from_taps(taps, grid);
        const double pi = std::acos(-1.0);
        for (std::size_t k = 0; k < 6; ++k) {
            std::complex<double> h = 0.0;
            const auto t = taps.pair(0, 1);
            for (std::size_t l = 0; l < t.size(); ++l) {
                h += t[l] * std::polar(1.0, -2.0 * pi * static_cast<double>(k * l) / 6.0);
            }
            CHECK(ch.gain(0, 1, k) == doctest::Approx(std::norm(h)).epsilon(1e-12));
        }
    }
    SUBCASE("deterministic per seed") {
        const FrequencyGrid grid(16, 16.0);
        CHECK(generate_multipath_channels(42, 2, grid, 4) == generate_multipath_channels(42, 2, grid, 4));
        CHECK_FALSE(generate_multipath_channels(42, 2, grid, 4) == generate_multipath_channels(43, 2, grid, 4));
    }
}

TEST_CASE("simplex grid") {
    CHECK(simplex_grid_size(2, 10, false) == 11);
    CHECK(simplex_grid_size(2, 10, true) == 66);
    const auto full = simplex_grid(3, 4, false);
    CHECK(full.size() == 15);
    for (const auto& s : full) CHECK(std::accumulate(s.begin(), s.end(), 0u) == 4);
    CHECK(std::is_sorted(full.begin(), full.end()));
    const auto partial = simplex_grid(2, 3, true);
    CHECK(partial.size() == 10);
    CHECK(partial.front() == UnitSplit{0, 0});
    const FrequencyGrid g(2, 4.0);
    const auto psd = split_to_psd({1, 3}, 8.0, 4, g);
    CHECK(psd[0] == doctest::Approx(1.0));
    CHECK(psd[1] == doctest::Approx(3.0));
}

TEST_CASE("random streams") {
    Rng a(1), b(1);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
    CHECK(derive_seed(7, 0) == derive_seed(7, 0));
    Rng c(3);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    Rng d(4);
    std::vector<double> w{0.0, 1.0, 0.0};
    for (int i = 0; i < 100; ++i) CHECK(d.categorical(w) == 1);
}
