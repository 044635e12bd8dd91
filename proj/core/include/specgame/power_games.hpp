#pragma once

// Bridges from the continuous power control game to finite normal-form games.

#include <array>
#include <vector>

#include "specgame/allocation_grid.hpp"
#include "specgame/normal_form.hpp"
#include "specgame/spectrum.hpp"

namespace specgame {

/// Everything needed to evaluate rates for a power control game.
struct PowerScenario {
    ChannelSet channels;
    NoiseProfile noise;
    PowerBudget budgets;
    FrequencyGrid grid;
};

/// Two users, two unit-width channels, flat direct gains and noise.
struct TwoChannelParams {
    double direct_gain = 1.0;
    /// Power gain from transmitter 1 into receiver 2, per channel.
    std::array<double, 2> cross_12{0.8, 0.4};
    /// Power gain from transmitter 2 into receiver 1, per channel.
    std::array<double, 2> cross_21{0.4, 0.4};
    double noise = 1.0;
    std::array<double, 2> budgets{10.0, 10.0};
};

PowerScenario two_channel_scenario(const TwoChannelParams& params = {});

/// Action indices of the two-action power game.
enum TwoActionPower : std::size_t { kConcentrate = 0, kSpread = 1 };

/// PSD row for Concentrate (whole budget in the user's own channel: channel 1
/// for user 1, channel 2 for user 2) or Spread (even split).
std::vector<double> two_action_psd(const PowerScenario& scenario, std::size_t user, std::size_t action);

/// Two-user two-channel game with actions {Concentrate, Spread}; payoffs are
/// achievable rates computed from the scenario.
NormalFormGame build_power_game_2x2(const PowerScenario& scenario);
NormalFormGame build_power_game_2x2(const TwoChannelParams& params = {});

struct DiscretizedPowerGame {
    NormalFormGame game;
    /// Unit split behind every action, per player.
    std::vector<std::vector<UnitSplit>> splits;
    unsigned levels = 0;

    std::vector<double> psd(const PowerScenario& scenario, std::size_t player, std::size_t action) const;
};

/// Each player's actions are the full-budget splits into `levels` units over
/// the scenario's bins; payoffs are achievable rates.
DiscretizedPowerGame build_discretized_power_game(const PowerScenario& scenario, unsigned levels);

}  // namespace specgame
