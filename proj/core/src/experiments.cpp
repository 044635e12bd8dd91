#include "specgame/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "specgame/error.hpp"
#include "specgame/matrix_games.hpp"
#include "specgame/random.hpp"

namespace specgame {

namespace {

std::vector<double> weights_or_ones(const std::vector<double>& weights, std::size_t users) {
    if (weights.empty()) return std::vector<double>(users, 1.0);
    require(weights.size() == users, "one welfare weight per user required");
    return weights;
}

std::size_t leader_of(const KnowledgeProfile& profile) {
    for (std::size_t n = 0; n < profile.size(); ++n) {
        if (profile[n] == KnowledgeLevel::heterogeneous_leader) return n;
    }
    return profile.size();
}

}  // namespace

const char* to_string(KnowledgeLevel level) {
    switch (level) {
        case KnowledgeLevel::private_knowledge: return "priv";
        case KnowledgeLevel::heterogeneous_leader: return "heter";
        case KnowledgeLevel::complete: return "comp";
    }
    return "unknown";
}

KnowledgeLevel knowledge_level_from_string(const std::string& name) {
    if (name == "priv" || name == "private") return KnowledgeLevel::private_knowledge;
    if (name == "heter" || name == "heterogeneous_leader") return KnowledgeLevel::heterogeneous_leader;
    if (name == "comp" || name == "complete") return KnowledgeLevel::complete;
    throw Error(ErrorCode::structural, "unknown knowledge level '" + name + "'");
}

void validate_knowledge_profile(const KnowledgeProfile& profile, std::size_t users) {
    require(profile.size() == users, "knowledge profile needs one level per user");
    const auto complete = std::count(profile.begin(), profile.end(), KnowledgeLevel::complete);
    const auto leaders = std::count(profile.begin(), profile.end(), KnowledgeLevel::heterogeneous_leader);
    require(complete == 0 || static_cast<std::size_t>(complete) == users,
            "complete knowledge applies to all users or none");
    require(leaders <= 1, "at most one heterogeneous leader");
    require(leaders == 0 || users == 2, "a heterogeneous leader needs a two-user scenario");
}

Profile best_response_dynamics(const NormalFormGame& game, const Profile& start, std::size_t max_steps) {
    Profile profile = start.empty() ? Profile(game.players(), 0) : start;
    game.index_of(profile);  // validates
    std::size_t steps = 0;
    for (;;) {
        bool moved = false;
        for (std::size_t n = 0; n < game.players(); ++n) {
            auto responses = best_response(game, n, profile);
            if (std::binary_search(responses.begin(), responses.end(), profile[n])) continue;
            if (++steps > max_steps) {
                throw Error(ErrorCode::no_pure_nash_reached,
                            "no pure NE reached: best-response dynamics cycles from " +
                                game.profile_label(start.empty() ? Profile(game.players(), 0) : start));
            }
            profile[n] = responses.front();
            moved = true;
        }
        if (!moved) return profile;
    }
}

std::vector<double> value_of_knowledge(const FiniteScenario& scenario, const KnowledgeProfile& profile) {
    const auto& game = scenario.game;
    validate_knowledge_profile(profile, game.players());
    Profile outcome;
    if (profile.front() == KnowledgeLevel::complete) {
        const auto weights = weights_or_ones(scenario.welfare_weights, game.players());
        double best = -INFINITY;
        for (std::size_t i = 0; i < game.profile_count(); ++i) {
            auto u = game.payoff_at(i);
            double welfare = 0.0;
            for (std::size_t n = 0; n < u.size(); ++n) welfare += weights[n] * u[n];
            if (welfare > best + kPayoffTieTolerance) {
                best = welfare;
                outcome = game.profile_at(i);
            }
        }
    } else if (const std::size_t leader = leader_of(profile); leader < profile.size()) {
        outcome = stackelberg_finite(game, leader).profile;
    } else {
        outcome = best_response_dynamics(game, scenario.start, 4 * game.profile_count());
    }
    auto u = game.payoff(outcome);
    return {u.begin(), u.end()};
}

std::vector<double> value_of_knowledge(const ContinuousScenario& scenario, const KnowledgeProfile& profile) {
    const auto& p = scenario.power;
    const std::size_t users = p.channels.users();
    validate_knowledge_profile(profile, users);
    if (profile.front() == KnowledgeLevel::complete) {
        const auto weights = weights_or_ones(scenario.welfare_weights, users);
        return weighted_sum_optimize(weights, p.channels, p.noise, p.budgets, p.grid, scenario.pareto).sample.rates;
    }
    if (const std::size_t leader = leader_of(profile); leader < profile.size()) {
        auto options = scenario.stackelberg;
        options.iw = scenario.iw;
        return stackelberg_leader_search(leader, p.channels, p.noise, p.budgets, p.grid, options).rates;
    }
    return iterative_water_filling(p.channels, p.noise, p.budgets, p.grid, scenario.iw).rates;
}

bool operator==(const EnsembleReport& a, const EnsembleReport& b) {
    if (a.realizations != b.realizations || a.skipped != b.skipped || a.mean_ratio != b.mean_ratio ||
        a.samples.size() != b.samples.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto& x = a.samples[i];
        const auto& y = b.samples[i];
        if (x.index != y.index || x.channel_seed != y.channel_seed || x.nash_rates != y.nash_rates ||
            x.stackelberg_rates != y.stackelberg_rates || x.ratios != y.ratios) {
            return false;
        }
    }
    for (std::size_t u = 0; u < 2; ++u) {
        if (a.histograms[u].edges != b.histograms[u].edges || a.histograms[u].counts != b.histograms[u].counts) {
            return false;
        }
    }
    return true;
}

std::uint64_t ensemble_channel_seed(std::uint64_t seed, std::size_t index, std::size_t attempt) {
    return derive_seed(derive_seed(seed, index), attempt);
}

ChannelSet ensemble_channels(const EnsembleConfig& config, std::size_t index, std::size_t attempt) {
    return generate_multipath_channels(ensemble_channel_seed(config.seed, index, attempt), 2, config.grid,
                                       config.tap_count, config.direct_power, config.cross_power);
}

Histogram make_histogram(const std::vector<double>& values, std::size_t bins) {
    require(bins >= 1, "histogram needs at least one bin");
    Histogram h;
    h.counts.assign(bins, 0);
    if (values.empty()) return h;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? hi : lo + width * static_cast<double>(i));
    for (double v : values) {
        std::size_t bin = width > 0.0 ? static_cast<std::size_t>((v - lo) / width) : 0;
        h.counts[std::min(bin, bins - 1)] += 1;
    }
    return h;
}

EnsembleReport channel_ensemble_study(const EnsembleConfig& config) {
    require(config.realizations >= 1, "ensemble needs at least one realization");
    require(config.budgets.size() == 2, "ensemble study is defined for two users");
    require(config.leader < 2, "leader index out of range");

    const PowerBudget budgets(config.budgets);
    const NoiseProfile noise(2, config.grid.bins(), config.noise);
    auto options = config.stackelberg;
    options.iw = config.iw;

    EnsembleReport report;
    report.realizations = config.realizations;
    // Realizations draw from their own (seed, index, attempt) streams, so the
    // loop order does not affect any result.
    for (std::size_t i = 0; i < config.realizations; ++i) {
        for (std::size_t attempt = 0;; ++attempt) {
            const auto channels = ensemble_channels(config, i, attempt);
            auto result = stackelberg_leader_search(config.leader, channels, noise, budgets, config.grid, options);
            if (!result.nash_converged) {
                if (++report.skipped > config.realizations) {
                    throw Error(ErrorCode::ensemble_unstable,
                                "ensemble unstable: iterative water-filling failed on more than half the draws");
                }
                continue;
            }
            EnsembleRealization sample;
            sample.index = i;
            sample.channel_seed = ensemble_channel_seed(config.seed, i, attempt);
            sample.nash_rates = result.nash_rates;
            sample.stackelberg_rates = result.rates;
            for (std::size_t u = 0; u < 2; ++u) sample.ratios[u] = result.rates[u] / result.nash_rates[u];
            report.samples.push_back(std::move(sample));
            break;
        }
    }

    for (std::size_t u = 0; u < 2; ++u) {
        std::vector<double> ratios;
        double sum = 0.0;
        for (const auto& s : report.samples) {
            ratios.push_back(s.ratios[u]);
            sum += s.ratios[u];
        }
        report.mean_ratio[u] = sum / static_cast<double>(ratios.size());
        report.histograms[u] = make_histogram(ratios, config.histogram_bins);
    }
    return report;
}

std::vector<RegionSample> region_comparison(const ContinuousScenario& scenario,
                                            const std::vector<std::vector<double>>& budget_pairs,
                                            const std::vector<std::vector<double>>& weight_list,
                                            std::size_t leader) {
    const auto& p = scenario.power;
    RegionOptions options{scenario.iw, leader, scenario.stackelberg, scenario.pareto};
    std::vector<RegionSample> table;
    for (auto method : {RegionMethod::iw, RegionMethod::stackelberg}) {
        auto samples = rate_region_sweep(method, p.channels, p.noise, p.grid, budget_pairs, p.budgets, options);
        table.insert(table.end(), samples.begin(), samples.end());
    }
    auto pareto = rate_region_sweep(RegionMethod::pareto, p.channels, p.noise, p.grid, weight_list, p.budgets, options);
    table.insert(table.end(), pareto.begin(), pareto.end());
    return table;
}

}  // namespace specgame
