#pragma once

// Repeated play of a normal-form game by adaptive learners.
//
// Each round every learner picks an action from its own state, the joint
// profile is scored on the game, each learner receives an observation
// (the joint action and its own payoff, or only its own payoff), and the
// learners update. Per-player random streams are derived from one seed.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specgame/normal_form.hpp"
#include "specgame/random.hpp"

namespace specgame {

enum class LearnerKind { regret_matching, fictitious_play, reinforcement, best_response_myopic, fixed };

const char* to_string(LearnerKind kind);
LearnerKind learner_kind_from_string(const std::string& name);

struct LearnerSpec {
    LearnerKind kind = LearnerKind::regret_matching;
    /// Action played by `fixed`, and the opening move of `best_response_myopic`.
    std::size_t action = 0;
};

enum class ObservationMode { full, payoff_only };

struct Observation {
    std::size_t own_action = 0;
    double own_payoff = 0.0;
    /// Absent when the learner only sees its own payoff.
    std::optional<Profile> joint_action;
    /// Explicitly exchanged information, if the run injects any.
    std::optional<std::vector<double>> exchanged;
};

/// Cumulative payoff differences D[a'] = sum_t u(a', a_-n^t) - u(a^t), from
/// which the average positive regrets follow in O(|A_n|).
class RegretAccumulator {
  public:
    RegretAccumulator(const NormalFormGame& game, std::size_t player);

    void record(const NormalFormGame& game, std::span<const std::size_t> profile);

    std::size_t rounds() const noexcept { return rounds_; }
    const std::vector<double>& cumulative() const noexcept { return cumulative_; }
    /// max(0, D[a'] / t) per action; all zero before the first round.
    std::vector<double> regrets() const;

    friend bool operator==(const RegretAccumulator&, const RegretAccumulator&) = default;

  private:
    std::size_t player_;
    std::size_t rounds_ = 0;
    std::vector<double> cumulative_;
};

class LearnerState {
  public:
    static LearnerState create(const LearnerSpec& spec, const NormalFormGame& game, std::size_t player,
                               std::uint64_t seed);

    LearnerKind kind() const noexcept { return kind_; }
    std::size_t player() const noexcept { return player_; }
    std::size_t action_count() const noexcept { return action_count_; }
    ObservationMode default_observation() const noexcept;

    /// Next action according to the learner's rule.
    std::size_t choose(const NormalFormGame& game);
    void observe(const NormalFormGame& game, const Observation& obs);

    std::optional<std::size_t> previous_action() const noexcept { return previous_action_; }
    std::size_t rounds_observed() const noexcept { return rounds_; }
    std::size_t fixed_action() const noexcept { return fixed_action_; }

    // regret matching
    const std::optional<RegretAccumulator>& regret() const noexcept { return regret_; }
    double inertia() const noexcept { return inertia_; }

    // fictitious play / myopic best response; counts[opponent][action]
    const std::vector<std::vector<double>>& opponent_counts() const noexcept { return opponent_counts_; }
    const std::optional<Profile>& last_joint_action() const noexcept { return last_joint_; }

    // reinforcement
    const std::vector<double>& propensities() const noexcept { return propensities_; }
    double payoff_shift() const noexcept { return payoff_shift_; }

    /// Beliefs about opponents' private state and the shared resource. Both
    /// stay empty: the resource is static and private state is unobserved.
    const std::vector<double>& opponent_state_belief() const noexcept { return opponent_state_belief_; }
    const std::vector<double>& resource_belief() const noexcept { return resource_belief_; }

    Rng& rng() noexcept { return rng_; }

    friend bool operator==(const LearnerState&, const LearnerState&) = default;

  private:
    LearnerState(LearnerKind kind, std::size_t player, std::size_t actions, std::uint64_t seed)
        : kind_(kind), player_(player), action_count_(actions), rng_(seed) {}

    LearnerKind kind_;
    std::size_t player_;
    std::size_t action_count_;
    std::size_t rounds_ = 0;
    std::optional<std::size_t> previous_action_;
    std::size_t fixed_action_ = 0;

    std::optional<RegretAccumulator> regret_;
    double inertia_ = 1.0;

    std::vector<std::vector<double>> opponent_counts_;
    std::optional<Profile> last_joint_;

    std::vector<double> propensities_;
    double payoff_shift_ = 0.0;

    std::vector<double> opponent_state_belief_;
    std::vector<double> resource_belief_;

    Rng rng_;
};

/// Switch probabilities under regret matching with inertia: r(a')/mu for
/// every a' other than the previous action, the rest on the previous action.
/// Uniform before the first round.
std::vector<double> regret_matching_probabilities(const LearnerState& state);
std::size_t regret_matching_step(const LearnerState& state, Rng& rng);

/// Best response to the product of opponents' empirical action frequencies
/// (uniform before any observation); lowest index wins ties.
std::size_t fictitious_play_step(const LearnerState& state, const NormalFormGame& game);

/// Sampling probabilities proportional to propensities.
std::vector<double> reinforcement_probabilities(const LearnerState& state);
std::size_t reinforcement_step(const LearnerState& state, Rng& rng);

/// Per-round record of a repeated game.
class LearningTrace {
  public:
    LearningTrace() = default;
    LearningTrace(std::vector<std::size_t> action_counts, bool record_regrets);

    std::size_t players() const noexcept { return action_counts_.size(); }
    std::size_t rounds() const noexcept { return rounds_; }
    const std::vector<std::size_t>& action_counts() const noexcept { return action_counts_; }
    bool has_regrets() const noexcept { return record_regrets_; }

    /// Rounds are indexed from 0.
    std::span<const std::size_t> joint_action(std::size_t round) const {
        return {actions_.data() + round * players(), players()};
    }
    std::span<const double> utilities(std::size_t round) const {
        return {utilities_.data() + round * players(), players()};
    }
    /// Average positive regrets of `player` after `round` + 1 rounds.
    std::span<const double> regrets(std::size_t round, std::size_t player) const;

    void append(std::span<const std::size_t> profile, std::span<const double> utilities,
                const std::vector<std::vector<double>>& regrets);

    friend bool operator==(const LearningTrace&, const LearningTrace&) = default;

  private:
    std::vector<std::size_t> action_counts_;
    std::vector<std::size_t> regret_offsets_;
    std::size_t regret_stride_ = 0;
    bool record_regrets_ = false;
    std::size_t rounds_ = 0;
    std::vector<std::size_t> actions_;
    std::vector<double> utilities_;
    std::vector<double> regrets_;
};

struct RunConfig {
    std::size_t rounds = 1000;
    std::uint64_t seed = 0;
    bool record_regrets = true;
    /// Per-player override of what each learner observes; empty means each
    /// learner's default.
    std::vector<ObservationMode> observation;
    /// Optional explicit information exchange, called per (round, player).
    std::function<std::optional<std::vector<double>>(std::size_t, std::size_t)> information;
};

struct RunResult {
    LearningTrace trace;
    std::vector<LearnerState> learners;
};

RunResult run_repeated_game(const NormalFormGame& game, std::span<const LearnerSpec> learners,
                            const RunConfig& config);

/// Regrets of `player` after the first `t` rounds of a trace (1 <= t <= T).
std::vector<double> regret_vector(const LearningTrace& trace, const NormalFormGame& game,
                                  std::size_t player, std::size_t t);

/// Largest regret over players and actions after the whole trace.
double max_regret(const LearningTrace& trace, const NormalFormGame& game);

JointDistribution empirical_joint_distribution(const LearningTrace& trace, const NormalFormGame& game);

/// Average utility vector over rounds [first, first + length).
std::vector<double> value_of_learning(const LearningTrace& trace, std::size_t first, std::size_t length);

}  // namespace specgame
