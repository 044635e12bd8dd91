#pragma once

// Scenario-level studies: outcome induced by each user's knowledge level,
// random-channel ensembles comparing leader/follower play against iterative
// water-filling, and joined rate-region tables.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "specgame/continuous_games.hpp"
#include "specgame/normal_form.hpp"
#include "specgame/power_games.hpp"

namespace specgame {

enum class KnowledgeLevel { private_knowledge, heterogeneous_leader, complete };

const char* to_string(KnowledgeLevel level);
/// Accepts "priv"/"private", "heter"/"heterogeneous_leader", "comp"/"complete".
KnowledgeLevel knowledge_level_from_string(const std::string& name);

using KnowledgeProfile = std::vector<KnowledgeLevel>;

/// Throws unless the profile is all-private, all-complete, or private with
/// exactly one heterogeneous leader in a two-user game.
void validate_knowledge_profile(const KnowledgeProfile& profile, std::size_t users);

struct FiniteScenario {
    NormalFormGame game;
    /// Starting profile of best-response dynamics (all zeros when empty).
    Profile start;
    /// Welfare weights for the complete-knowledge outcome (all ones when empty).
    std::vector<double> welfare_weights;
};

struct ContinuousScenario {
    PowerScenario power;
    IwOptions iw;
    StackelbergOptions stackelberg;
    ParetoOptions pareto;
    std::vector<double> welfare_weights;
};

/// Sequential best-response dynamics (players in index order, switching to
/// their lowest-index best response) until no one moves. Throws
/// ErrorCode::no_pure_nash_reached after `max_steps` single-player moves.
Profile best_response_dynamics(const NormalFormGame& game, const Profile& start, std::size_t max_steps);

/// Utility vector induced when every user plays the policy its knowledge
/// level supports.
std::vector<double> value_of_knowledge(const FiniteScenario& scenario, const KnowledgeProfile& profile);
std::vector<double> value_of_knowledge(const ContinuousScenario& scenario, const KnowledgeProfile& profile);

struct EnsembleConfig {
    std::size_t realizations = 100;
    std::uint64_t seed = 0;
    FrequencyGrid grid{16, 16.0};
    std::vector<double> budgets{1000.0, 1000.0};
    double noise = 1.0;
    std::size_t tap_count = 4;
    double direct_power = 1.0;
    double cross_power = 0.5;
    std::size_t leader = 0;
    std::size_t histogram_bins = 20;
    IwOptions iw;
    StackelbergOptions stackelberg;
};

struct Histogram {
    std::vector<double> edges;
    std::vector<std::size_t> counts;
};

struct EnsembleRealization {
    std::size_t index = 0;
    std::uint64_t channel_seed = 0;
    std::vector<double> nash_rates;
    std::vector<double> stackelberg_rates;
    std::array<double, 2> ratios{};
};

struct EnsembleReport {
    std::size_t realizations = 0;
    std::size_t skipped = 0;
    std::vector<EnsembleRealization> samples;
    std::array<double, 2> mean_ratio{};
    std::array<Histogram, 2> histograms;

    friend bool operator==(const EnsembleReport& a, const EnsembleReport& b);
};

/// Seed of the channel draw for realization `index` after `attempt` resamples.
std::uint64_t ensemble_channel_seed(std::uint64_t seed, std::size_t index, std::size_t attempt);

/// Channels for one realization under the configured normalization.
ChannelSet ensemble_channels(const EnsembleConfig& config, std::size_t index, std::size_t attempt = 0);

/// Per realization: draw channels, find the Nash point by iterative
/// water-filling (resampling when it does not converge), run the leader
/// search, and record R'_n / R_n^nash. Throws ErrorCode::ensemble_unstable
/// when more than half of all draws are skipped.
EnsembleReport channel_ensemble_study(const EnsembleConfig& config);

/// Uniform bins over [min, max] of the values.
Histogram make_histogram(const std::vector<double>& values, std::size_t bins);

/// IW and Stackelberg samples for each budget pair followed by Pareto
/// samples for each weight vector.
std::vector<RegionSample> region_comparison(const ContinuousScenario& scenario,
                                            const std::vector<std::vector<double>>& budget_pairs,
                                            const std::vector<std::vector<double>>& weight_list,
                                            std::size_t leader = 0);

}  // namespace specgame
