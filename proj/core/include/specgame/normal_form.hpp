#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace specgame {

/// One action index per player.
using Profile = std::vector<std::size_t>;

/// Finite game in normal form. Joint profiles are indexed in mixed radix with
/// player 0 most significant, so index order is lexicographic order.
class NormalFormGame {
  public:
    NormalFormGame(std::vector<std::size_t> action_counts, std::vector<double> payoffs,
                   std::vector<std::vector<std::string>> action_names = {});

    std::size_t players() const noexcept { return action_counts_.size(); }
    std::size_t actions(std::size_t player) const { return action_counts_.at(player); }
    const std::vector<std::size_t>& action_counts() const noexcept { return action_counts_; }
    std::size_t profile_count() const noexcept { return profile_count_; }

    std::size_t index_of(std::span<const std::size_t> profile) const;
    Profile profile_at(std::size_t index) const;

    /// Utility vector (one entry per player) at a joint profile.
    std::span<const double> payoff(std::span<const std::size_t> profile) const {
        return payoff_at(index_of(profile));
    }
    std::span<const double> payoff_at(std::size_t index) const {
        return {payoffs_.data() + index * players(), players()};
    }
    double utility(std::size_t player, std::span<const std::size_t> profile) const {
        return payoff(profile)[player];
    }

    const std::string& action_name(std::size_t player, std::size_t action) const {
        return names_.at(player).at(action);
    }
    const std::vector<std::vector<std::string>>& action_names() const noexcept { return names_; }
    /// Action index by name; throws when absent.
    std::size_t action_index(std::size_t player, const std::string& name) const;
    /// "(A,B)"-style label for a profile.
    std::string profile_label(std::span<const std::size_t> profile) const;

    double min_payoff() const;
    double max_payoff() const;

    const std::vector<double>& raw_payoffs() const noexcept { return payoffs_; }

    friend bool operator==(const NormalFormGame&, const NormalFormGame&) = default;

  private:
    std::vector<std::size_t> action_counts_;
    std::size_t profile_count_ = 1;
    std::vector<double> payoffs_;  // [profile][player]
    std::vector<std::vector<std::string>> names_;
};

/// Independent per-player mixed strategies.
struct MixedStrategy {
    std::vector<std::vector<double>> probabilities;
};

/// Probability mass over joint profiles (indexed as in NormalFormGame).
class JointDistribution {
  public:
    explicit JointDistribution(std::vector<double> mass);

    static JointDistribution point_mass(const NormalFormGame& game, std::span<const std::size_t> profile);
    static JointDistribution product(const NormalFormGame& game, const MixedStrategy& strategy);

    std::size_t size() const noexcept { return mass_.size(); }
    double operator[](std::size_t index) const { return mass_[index]; }
    const std::vector<double>& mass() const noexcept { return mass_; }

    /// Expected utility of every player.
    std::vector<double> expected_utilities(const NormalFormGame& game) const;

  private:
    std::vector<double> mass_;
};

}  // namespace specgame
