#include "specgame/normal_form.hpp"

#include <algorithm>
#include <cmath>

#include "specgame/error.hpp"

namespace specgame {

NormalFormGame::NormalFormGame(std::vector<std::size_t> action_counts, std::vector<double> payoffs,
                               std::vector<std::vector<std::string>> action_names)
    : action_counts_(std::move(action_counts)), payoffs_(std::move(payoffs)), names_(std::move(action_names)) {
    require(!action_counts_.empty(), "a game needs at least one player");
    for (std::size_t count : action_counts_) {
        require(count >= 1, "every player needs at least one action");
        require(profile_count_ <= (std::size_t{1} << 40) / count, "game too large");
        profile_count_ *= count;
    }
    require(payoffs_.size() == profile_count_ * players(), "payoff table must cover every joint profile");
    for (double u : payoffs_) require(std::isfinite(u), "payoffs must be finite");

    if (names_.empty()) {
        names_.resize(players());
        for (std::size_t n = 0; n < players(); ++n) {
            for (std::size_t a = 0; a < action_counts_[n]; ++a) names_[n].push_back(std::to_string(a));
        }
    }
    require(names_.size() == players(), "action names needed for every player");
    for (std::size_t n = 0; n < players(); ++n) {
        require(names_[n].size() == action_counts_[n], "one name per action required");
        for (std::size_t a = 0; a < names_[n].size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                require(names_[n][a] != names_[n][b], "action names must be unique per player");
            }
        }
    }
}

std::size_t NormalFormGame::index_of(std::span<const std::size_t> profile) const {
    require(profile.size() == players(), "profile length does not match player count");
    std::size_t index = 0;
    for (std::size_t n = 0; n < players(); ++n) {
        require(profile[n] < action_counts_[n], "action index out of range");
        index = index * action_counts_[n] + profile[n];
    }
    return index;
}

Profile NormalFormGame::profile_at(std::size_t index) const {
    require(index < profile_count_, "profile index out of range");
    Profile profile(players());
    for (std::size_t n = players(); n-- > 0;) {
        profile[n] = index % action_counts_[n];
        index /= action_counts_[n];
    }
    return profile;
}

std::size_t NormalFormGame::action_index(std::size_t player, const std::string& name) const {
    require(player < players(), "player index out of range");
    const auto& names = names_[player];
    auto it = std::find(names.begin(), names.end(), name);
    require(it != names.end(), "unknown action '" + name + "' for player " + std::to_string(player + 1));
    return static_cast<std::size_t>(it - names.begin());
}

std::string NormalFormGame::profile_label(std::span<const std::size_t> profile) const {
    std::string label = "(";
    for (std::size_t n = 0; n < profile.size(); ++n) {
        if (n) label += ',';
        label += action_name(n, profile[n]);
    }
    return label + ")";
}

double NormalFormGame::min_payoff() const { return *std::min_element(payoffs_.begin(), payoffs_.end()); }
double NormalFormGame::max_payoff() const { return *std::max_element(payoffs_.begin(), payoffs_.end()); }

JointDistribution::JointDistribution(std::vector<double> mass) : mass_(std::move(mass)) {
    require(!mass_.empty(), "distribution must not be empty");
    double total = 0.0;
    for (double p : mass_) {
        require(std::isfinite(p) && p >= 0.0, "probabilities must be nonnegative");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12 * static_cast<double>(mass_.size()) + 1e-12,
            "probabilities must sum to 1");
}

JointDistribution JointDistribution::point_mass(const NormalFormGame& game,
                                                std::span<const std::size_t> profile) {
    std::vector<double> mass(game.profile_count(), 0.0);
    mass[game.index_of(profile)] = 1.0;
    return JointDistribution(std::move(mass));
}

JointDistribution JointDistribution::product(const NormalFormGame& game, const MixedStrategy& strategy) {
    require(strategy.probabilities.size() == game.players(), "one mixed strategy per player required");
    for (std::size_t n = 0; n < game.players(); ++n) {
        require(strategy.probabilities[n].size() == game.actions(n), "mixed strategy has wrong length");
    }
    std::vector<double> mass(game.profile_count());
    for (std::size_t i = 0; i < mass.size(); ++i) {
        const auto profile = game.profile_at(i);
        double p = 1.0;
        for (std::size_t n = 0; n < profile.size(); ++n) p *= strategy.probabilities[n][profile[n]];
        mass[i] = p;
    }
    return JointDistribution(std::move(mass));
}

std::vector<double> JointDistribution::expected_utilities(const NormalFormGame& game) const {
    require(mass_.size() == game.profile_count(), "distribution does not match the game");
    std::vector<double> value(game.players(), 0.0);
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (mass_[i] == 0.0) continue;
        auto u = game.payoff_at(i);
        for (std::size_t n = 0; n < value.size(); ++n) value[n] += mass_[i] * u[n];
    }
    return value;
}

}  // namespace specgame
