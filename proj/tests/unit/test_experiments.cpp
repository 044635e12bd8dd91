#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include <specgame/error.hpp>
#include <specgame/experiments.hpp>
#include <specgame/matrix_games.hpp>

using namespace specgame;

namespace {

using K = KnowledgeLevel;

FiniteScenario two_channel_finite() { return {build_power_game_2x2(), {}, {}}; }

ContinuousScenario continuous(const PowerScenario& p) { return {p, {}, {}, {}, {}}; }

PowerScenario decoupled_flat() {
    ChannelSet ch(2, 2);
    ch.set_gains(0, 0, std::vector<double>{1.0, 1.0});
    ch.set_gains(1, 1, std::vector<double>{1.0, 1.0});
    return {ch, NoiseProfile(2, 2, 1.0), PowerBudget({10.0, 10.0}), FrequencyGrid(2, 2.0)};
}

EnsembleConfig small_ensemble(std::size_t m) {
    EnsembleConfig c;
    c.realizations = m;
    c.seed = 4;
    c.grid = FrequencyGrid(8, 8.0);
    c.stackelberg.refine_rounds = 5;
    return c;
}

}  // namespace

TEST_CASE("knowledge levels") {
    CHECK(knowledge_level_from_string("priv") == K::private_knowledge);
    CHECK(knowledge_level_from_string("heterogeneous_leader") == K::heterogeneous_leader);
    CHECK(knowledge_level_from_string("comp") == K::complete);
    CHECK_THROWS_AS(knowledge_level_from_string("partial"), Error);
    CHECK_NOTHROW(validate_knowledge_profile({K::heterogeneous_leader, K::private_knowledge}, 2));
    CHECK_THROWS_AS(validate_knowledge_profile({K::complete, K::private_knowledge}, 2), Error);
    CHECK_THROWS_AS(validate_knowledge_profile({K::heterogeneous_leader, K::heterogeneous_leader}, 2), Error);
    CHECK_THROWS_AS(validate_knowledge_profile({K::heterogeneous_leader, K::private_knowledge, K::private_knowledge}, 3),
                    Error);
    CHECK_THROWS_AS(validate_knowledge_profile({K::private_knowledge}, 2), Error);
}

TEST_CASE("value of knowledge on finite games") {
    SUBCASE("two-channel power game") {
        const auto priv = value_of_knowledge(two_channel_finite(), {K::private_knowledge, K::private_knowledge});
        CHECK(std::abs(priv[0] - 2.83) < 0.005);
        CHECK(std::abs(priv[1] - 2.42) < 0.005);
        const auto heter = value_of_knowledge(two_channel_finite(), {K::heterogeneous_leader, K::private_knowledge});
        CHECK(std::abs(heter[0] - 3.46) < 0.005);
        CHECK(std::abs(heter[1] - 3.46) < 0.005);
        CHECK(heter[0] > priv[0]);
        CHECK(heter[1] > priv[1]);
        const auto comp = value_of_knowledge(two_channel_finite(), {K::complete, K::complete});
        CHECK(comp[0] + comp[1] >= heter[0] + heter[1] - 1e-12);
    }
    SUBCASE("contention game") {
        const FiniteScenario s{build_contention_game(), {}, {}};
        CHECK(value_of_knowledge(s, {K::complete, K::complete}) == std::vector<double>{6.0, 6.0});
        CHECK(value_of_knowledge(s, {K::private_knowledge, K::private_knowledge}) == std::vector<double>{2.0, 7.0});
        const FiniteScenario from_bb{build_contention_game(), {1, 1}, {}};
        CHECK(value_of_knowledge(from_bb, {K::private_knowledge, K::private_knowledge}) == std::vector<double>{7.0, 2.0});
        CHECK(value_of_knowledge(s, {K::private_knowledge, K::heterogeneous_leader}) == std::vector<double>{2.0, 7.0});
        const FiniteScenario weighted{build_contention_game(), {}, {1.0, 0.0}};
        CHECK(value_of_knowledge(weighted, {K::complete, K::complete}) == std::vector<double>{7.0, 2.0});
    }
    SUBCASE("cycling dynamics are reported") {
        const FiniteScenario pennies{NormalFormGame({2, 2}, {1, -1, -1, 1, -1, 1, 1, -1}), {}, {}};
        try {
            value_of_knowledge(pennies, {K::private_knowledge, K::private_knowledge});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::no_pure_nash_reached);
        }
    }
}

TEST_CASE("value of knowledge on the continuous game") {
    const auto s = continuous(two_channel_scenario());
    const auto priv = value_of_knowledge(s, {K::private_knowledge, K::private_knowledge});
    const auto nash = iterative_water_filling(s.power.channels, s.power.noise, s.power.budgets, s.power.grid);
    CHECK(priv == nash.rates);
    for (std::size_t leader = 0; leader < 2; ++leader) {
        KnowledgeProfile profile(2, K::private_knowledge);
        profile[leader] = K::heterogeneous_leader;
        const auto heter = value_of_knowledge(s, profile);
        CHECK(heter[leader] >= priv[leader] - 1e-9);
    }
    const auto comp = value_of_knowledge(s, {K::complete, K::complete});
    CHECK(comp[0] + comp[1] >= 2.0 * std::log2(11.0) - 1e-12);
}

TEST_CASE("histograms") {
    const auto h = make_histogram({1.0, 1.5, 2.0, 2.0, 3.0}, 4);
    CHECK(h.edges.size() == 5);
    CHECK(h.edges.front() == 1.0);
    CHECK(h.edges.back() == 3.0);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 5);
    CHECK(h.counts[3] == 1);
    const auto flat = make_histogram({2.0, 2.0}, 3);
    CHECK(flat.counts[0] == 2);
    CHECK_THROWS_AS(make_histogram({1.0}, 0), Error);
}

TEST_CASE("channel ensembles") {
    SUBCASE("decoupled channels give unit ratios") {
        auto c = small_ensemble(1);
        c.cross_power = 0.0;
        const auto r = channel_ensemble_study(c);
        REQUIRE(r.samples.size() == 1);
        CHECK(r.samples[0].ratios[0] == 1.0);
        CHECK(r.samples[0].ratios[1] == 1.0);
    }
    SUBCASE("report invariants") {
        const auto c = small_ensemble(12);
        const auto r = channel_ensemble_study(c);
        CHECK(r.samples.size() == 12);
        for (const auto& s : r.samples) {
            CHECK(s.ratios[0] >= 1.0 - 1e-9);
            CHECK(s.ratios[1] > 0.0);
        }
        for (std::size_t u = 0; u < 2; ++u) {
            const auto& h = r.histograms[u];
            CHECK(h.counts.size() == c.histogram_bins);
            CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 12);
        }
        CHECK(r == channel_ensemble_study(c));
    }
    SUBCASE("realizations use their own streams") {
        const auto a = channel_ensemble_study(small_ensemble(3));
        const auto b = channel_ensemble_study(small_ensemble(5));
        for (std::size_t i = 0; i < 3; ++i) CHECK(a.samples[i].ratios == b.samples[i].ratios);
    }
    SUBCASE("unstable ensembles are rejected") {
        auto c = small_ensemble(2);
        c.iw.max_iter = 1;
        try {
            channel_ensemble_study(c);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ensemble_unstable);
        }
    }
    SUBCASE("bad configuration") {
        auto c = small_ensemble(0);
        CHECK_THROWS_AS(channel_ensemble_study(c), Error);
    }
}

TEST_CASE("region comparison") {
    SUBCASE("decoupled channels collapse every method to one point") {
        const auto s = continuous(decoupled_flat());
        const auto t = region_comparison(s, {{10.0, 10.0}}, {{1.0, 1.0}});
        REQUIRE(t.size() == 3);
        for (const auto& sample : t) {
            CHECK(sample.rates[0] == doctest::Approx(2.0 * std::log2(6.0)));
            CHECK(sample.rates[1] == doctest::Approx(2.0 * std::log2(6.0)));
        }
    }
    SUBCASE("two-channel example") {
        const auto s = continuous(two_channel_scenario());
        const auto t = region_comparison(s, {{10.0, 10.0}}, {{1.0, 0.0}, {0.0, 1.0}});
        REQUIRE(t.size() == 4);
        CHECK(t[0].method == RegionMethod::iw);
        CHECK(t[1].method == RegionMethod::stackelberg);
        CHECK(weakly_dominates(t[1].rates, t[0].rates));
        CHECK(t[2].rates[1] == 0.0);
        CHECK(t[3].rates[0] == 0.0);
    }
}
