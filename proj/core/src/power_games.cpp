#include "specgame/power_games.hpp"

#include <cmath>
#include <string>

#include "specgame/error.hpp"

namespace specgame {

PowerScenario two_channel_scenario(const TwoChannelParams& params) {
    FrequencyGrid grid(2, 2.0);
    ChannelSet channels(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
        channels.set_gain(0, 0, k, params.direct_gain);
        channels.set_gain(1, 1, k, params.direct_gain);
        channels.set_gain(0, 1, k, params.cross_12[k]);
        channels.set_gain(1, 0, k, params.cross_21[k]);
    }
    return {std::move(channels), NoiseProfile(2, 2, params.noise),
            PowerBudget({params.budgets[0], params.budgets[1]}), grid};
}

std::vector<double> two_action_psd(const PowerScenario& scenario, std::size_t user, std::size_t action) {
    require(scenario.grid.bins() == 2 && scenario.channels.users() == 2,
            "two-action power game needs two users and two channels");
    require(user < 2 && action < 2, "user or action index out of range");
    const double level = scenario.budgets[user] / scenario.grid.bin_width();
    std::vector<double> psd(2, 0.0);
    if (action == kConcentrate) {
        psd[user] = level;
    } else {
        psd[0] = psd[1] = 0.5 * level;
    }
    return psd;
}

NormalFormGame build_power_game_2x2(const PowerScenario& scenario) {
    std::vector<double> payoffs;
    for (std::size_t a1 = 0; a1 < 2; ++a1) {
        for (std::size_t a2 = 0; a2 < 2; ++a2) {
            PowerAllocation alloc(2, 2);
            alloc.set_row(0, two_action_psd(scenario, 0, a1));
            alloc.set_row(1, two_action_psd(scenario, 1, a2));
            for (double r : achievable_rates(alloc, scenario.channels, scenario.noise, scenario.grid)) {
                payoffs.push_back(r);
            }
        }
    }
    return NormalFormGame({2, 2}, std::move(payoffs),
                          {{"Concentrate", "Spread"}, {"Concentrate", "Spread"}});
}

NormalFormGame build_power_game_2x2(const TwoChannelParams& params) {
    return build_power_game_2x2(two_channel_scenario(params));
}

std::vector<double> DiscretizedPowerGame::psd(const PowerScenario& scenario, std::size_t player,
                                              std::size_t action) const {
    return split_to_psd(splits.at(player).at(action), scenario.budgets[player], levels, scenario.grid);
}

DiscretizedPowerGame build_discretized_power_game(const PowerScenario& scenario, unsigned levels) {
    const std::size_t users = scenario.channels.users();
    const std::size_t bins = scenario.grid.bins();
    require(levels >= 1, "levels must be positive");
    require(std::pow(simplex_grid_size(bins, levels, false), static_cast<double>(users)) <= 1e6,
            "discretized power game too large", ErrorCode::oracle_scale_exceeded);

    std::vector<std::vector<UnitSplit>> splits(users, simplex_grid(bins, levels, false));
    std::vector<std::size_t> counts(users, splits[0].size());
    std::vector<std::vector<std::string>> names(users);
    for (std::size_t n = 0; n < users; ++n) {
        for (const auto& split : splits[n]) {
            std::string name;
            for (std::size_t k = 0; k < split.size(); ++k) {
                if (k) name += '-';
                name += std::to_string(split[k]);
            }
            names[n].push_back(std::move(name));
        }
    }

    // Rows are filled through a probe game that only supplies profile indexing.
    std::size_t profiles = 1;
    for (auto c : counts) profiles *= c;
    NormalFormGame indexing(counts, std::vector<double>(profiles * users, 0.0));
    std::vector<double> payoffs;
    payoffs.reserve(profiles * users);
    for (std::size_t i = 0; i < profiles; ++i) {
        auto profile = indexing.profile_at(i);
        PowerAllocation alloc(users, bins);
        for (std::size_t n = 0; n < users; ++n) {
            alloc.set_row(n, split_to_psd(splits[n][profile[n]], scenario.budgets[n], levels, scenario.grid));
        }
        for (double r : achievable_rates(alloc, scenario.channels, scenario.noise, scenario.grid)) {
            payoffs.push_back(r);
        }
    }
    return {NormalFormGame(std::move(counts), std::move(payoffs), std::move(names)), std::move(splits), levels};
}

}  // namespace specgame
