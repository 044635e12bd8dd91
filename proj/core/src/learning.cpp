#include "specgame/learning.hpp"

#include <algorithm>
#include <cmath>

#include "specgame/error.hpp"
#include "specgame/matrix_games.hpp"

namespace specgame {

namespace {

bool needs_joint_action(LearnerKind kind) {
    return kind == LearnerKind::regret_matching || kind == LearnerKind::fictitious_play ||
           kind == LearnerKind::best_response_myopic;
}

}  // namespace

const char* to_string(LearnerKind kind) {
    switch (kind) {
        case LearnerKind::regret_matching: return "regret_matching";
        case LearnerKind::fictitious_play: return "fictitious_play";
        case LearnerKind::reinforcement: return "reinforcement";
        case LearnerKind::best_response_myopic: return "best_response_myopic";
        case LearnerKind::fixed: return "fixed";
    }
    return "unknown";
}

LearnerKind learner_kind_from_string(const std::string& name) {
    for (auto kind : {LearnerKind::regret_matching, LearnerKind::fictitious_play, LearnerKind::reinforcement,
                      LearnerKind::best_response_myopic, LearnerKind::fixed}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorCode::structural, "unknown learner kind '" + name + "'");
}

RegretAccumulator::RegretAccumulator(const NormalFormGame& game, std::size_t player)
    : player_(player), cumulative_(game.actions(player), 0.0) {}

void RegretAccumulator::record(const NormalFormGame& game, std::span<const std::size_t> profile) {
    Profile trial(profile.begin(), profile.end());
    const double realized = game.utility(player_, trial);
    for (std::size_t a = 0; a < cumulative_.size(); ++a) {
        trial[player_] = a;
        cumulative_[a] += game.utility(player_, trial) - realized;
    }
    ++rounds_;
}

std::vector<double> RegretAccumulator::regrets() const {
    std::vector<double> out(cumulative_.size(), 0.0);
    if (rounds_ == 0) return out;
    for (std::size_t a = 0; a < out.size(); ++a) {
        out[a] = std::max(0.0, cumulative_[a] / static_cast<double>(rounds_));
    }
    return out;
}

LearnerState LearnerState::create(const LearnerSpec& spec, const NormalFormGame& game, std::size_t player,
                                  std::uint64_t seed) {
    require(player < game.players(), "player index out of range");
    const std::size_t actions = game.actions(player);
    LearnerState state(spec.kind, player, actions, seed);
    const double span = game.max_payoff() - game.min_payoff();
    switch (spec.kind) {
        case LearnerKind::regret_matching: {
            state.regret_.emplace(game, player);
            std::size_t widest = 0;
            for (std::size_t count : game.action_counts()) widest = std::max(widest, count);
            state.inertia_ = 2.0 * static_cast<double>(widest - 1) * span;
            if (state.inertia_ <= 0.0) state.inertia_ = 1.0;
            break;
        }
        case LearnerKind::fictitious_play:
            for (std::size_t n = 0; n < game.players(); ++n) {
                state.opponent_counts_.emplace_back(n == player ? 0 : game.actions(n), 0.0);
            }
            break;
        case LearnerKind::reinforcement:
            state.payoff_shift_ = -game.min_payoff();
            state.propensities_.assign(actions, span > 0.0 ? span : 1.0);
            break;
        case LearnerKind::best_response_myopic:
        case LearnerKind::fixed:
            require(spec.action < actions, "learner action index out of range");
            state.fixed_action_ = spec.action;
            break;
    }
    return state;
}

ObservationMode LearnerState::default_observation() const noexcept {
    return kind_ == LearnerKind::reinforcement ? ObservationMode::payoff_only : ObservationMode::full;
}

std::size_t LearnerState::choose(const NormalFormGame& game) {
    switch (kind_) {
        case LearnerKind::regret_matching: return regret_matching_step(*this, rng_);
        case LearnerKind::fictitious_play: return fictitious_play_step(*this, game);
        case LearnerKind::reinforcement: return reinforcement_step(*this, rng_);
        case LearnerKind::best_response_myopic:
            if (!last_joint_) return fixed_action_;
            return best_response(game, player_, *last_joint_).front();
        case LearnerKind::fixed: return fixed_action_;
    }
    return 0;
}

void LearnerState::observe(const NormalFormGame& game, const Observation& obs) {
    require(obs.own_action < action_count_, "observed action out of range");
    if (needs_joint_action(kind_)) {
        require(obs.joint_action.has_value(),
                std::string(to_string(kind_)) + " learner requires the joint action to be observable");
        require(obs.joint_action->size() == game.players() && (*obs.joint_action)[player_] == obs.own_action,
                "observed joint action is inconsistent");
    }
    ++rounds_;
    previous_action_ = obs.own_action;
    switch (kind_) {
        case LearnerKind::regret_matching:
            regret_->record(game, *obs.joint_action);
            break;
        case LearnerKind::fictitious_play:
            for (std::size_t n = 0; n < opponent_counts_.size(); ++n) {
                if (n != player_) opponent_counts_[n][(*obs.joint_action)[n]] += 1.0;
            }
            break;
        case LearnerKind::reinforcement:
            // Own payoff only.
            propensities_[obs.own_action] += std::max(0.0, obs.own_payoff + payoff_shift_);
            break;
        case LearnerKind::best_response_myopic:
            last_joint_ = *obs.joint_action;
            break;
        case LearnerKind::fixed:
            break;
    }
}

std::vector<double> regret_matching_probabilities(const LearnerState& state) {
    require(state.kind() == LearnerKind::regret_matching, "not a regret-matching learner");
    const std::size_t actions = state.action_count();
    const auto previous = state.previous_action();
    if (!previous) return std::vector<double>(actions, 1.0 / static_cast<double>(actions));

    auto regrets = state.regret()->regrets();
    std::vector<double> p(actions, 0.0);
    double moved = 0.0;
    for (std::size_t a = 0; a < actions; ++a) {
        if (a == *previous) continue;
        p[a] = regrets[a] / state.inertia();
        moved += p[a];
    }
    p[*previous] = 1.0 - moved;
    return p;
}

std::size_t regret_matching_step(const LearnerState& state, Rng& rng) {
    return rng.categorical(regret_matching_probabilities(state));
}

std::size_t fictitious_play_step(const LearnerState& state, const NormalFormGame& game) {
    require(state.kind() == LearnerKind::fictitious_play, "not a fictitious-play learner");
    const std::size_t self = state.player();
    const auto& counts = state.opponent_counts();

    // Belief over each opponent's action: empirical frequency, uniform if unseen.
    std::vector<std::vector<double>> belief(game.players());
    for (std::size_t n = 0; n < game.players(); ++n) {
        if (n == self) continue;
        double total = 0.0;
        for (double c : counts[n]) total += c;
        belief[n].resize(game.actions(n));
        for (std::size_t a = 0; a < belief[n].size(); ++a) {
            belief[n][a] = total > 0.0 ? counts[n][a] / total : 1.0 / static_cast<double>(belief[n].size());
        }
    }

    std::vector<double> expected(game.actions(self), 0.0);
    for (std::size_t i = 0; i < game.profile_count(); ++i) {
        const auto profile = game.profile_at(i);
        double weight = 1.0;
        for (std::size_t n = 0; n < game.players(); ++n) {
            if (n != self) weight *= belief[n][profile[n]];
        }
        if (weight != 0.0) expected[profile[self]] += weight * game.utility(self, profile);
    }
    const double best = *std::max_element(expected.begin(), expected.end());
    for (std::size_t a = 0; a < expected.size(); ++a) {
        if (expected[a] >= best - kPayoffTieTolerance * std::max(1.0, std::abs(best))) return a;
    }
    return 0;
}

std::vector<double> reinforcement_probabilities(const LearnerState& state) {
    require(state.kind() == LearnerKind::reinforcement, "not a reinforcement learner");
    const auto& q = state.propensities();
    double total = 0.0;
    for (double v : q) total += v;
    std::vector<double> p(q.size());
    for (std::size_t a = 0; a < q.size(); ++a) p[a] = q[a] / total;
    return p;
}

std::size_t reinforcement_step(const LearnerState& state, Rng& rng) {
    require(state.kind() == LearnerKind::reinforcement, "not a reinforcement learner");
    return rng.categorical(state.propensities());
}

LearningTrace::LearningTrace(std::vector<std::size_t> action_counts, bool record_regrets)
    : action_counts_(std::move(action_counts)), record_regrets_(record_regrets) {
    for (std::size_t count : action_counts_) {
        regret_offsets_.push_back(regret_stride_);
        regret_stride_ += count;
    }
}

std::span<const double> LearningTrace::regrets(std::size_t round, std::size_t player) const {
    require(record_regrets_, "trace was recorded without regrets");
    require(round < rounds_ && player < players(), "trace index out of range");
    return {regrets_.data() + round * regret_stride_ + regret_offsets_[player], action_counts_[player]};
}

void LearningTrace::append(std::span<const std::size_t> profile, std::span<const double> utilities,
                           const std::vector<std::vector<double>>& regrets) {
    require(profile.size() == players() && utilities.size() == players(), "trace record has wrong width");
    actions_.insert(actions_.end(), profile.begin(), profile.end());
    utilities_.insert(utilities_.end(), utilities.begin(), utilities.end());
    if (record_regrets_) {
        require(regrets.size() == players(), "trace regrets need one vector per player");
        for (std::size_t n = 0; n < players(); ++n) {
            require(regrets[n].size() == action_counts_[n], "regret vector has wrong length");
            regrets_.insert(regrets_.end(), regrets[n].begin(), regrets[n].end());
        }
    }
    ++rounds_;
}

RunResult run_repeated_game(const NormalFormGame& game, std::span<const LearnerSpec> learners,
                            const RunConfig& config) {
    const std::size_t players = game.players();
    require(learners.size() == players, "one learner per player required");
    require(config.rounds >= 1, "a run needs at least one round");
    require(config.observation.empty() || config.observation.size() == players,
            "observation overrides need one entry per player");

    RunResult result{LearningTrace(game.action_counts(), config.record_regrets), {}};
    std::vector<ObservationMode> modes;
    for (std::size_t n = 0; n < players; ++n) {
        result.learners.push_back(LearnerState::create(learners[n], game, n, derive_seed(config.seed, n)));
        modes.push_back(config.observation.empty() ? result.learners[n].default_observation()
                                                   : config.observation[n]);
        require(!(needs_joint_action(learners[n].kind) && modes[n] == ObservationMode::payoff_only),
                std::string(to_string(learners[n].kind)) + " learner cannot run on payoff-only observation");
    }

    std::vector<RegretAccumulator> accumulators;
    if (config.record_regrets) {
        for (std::size_t n = 0; n < players; ++n) accumulators.emplace_back(game, n);
    }
    std::vector<std::vector<double>> regrets(players);
    Profile profile(players);
    for (std::size_t t = 0; t < config.rounds; ++t) {
        for (std::size_t n = 0; n < players; ++n) profile[n] = result.learners[n].choose(game);
        const auto utilities = game.payoff(profile);
        for (std::size_t n = 0; n < players; ++n) {
            Observation obs;
            obs.own_action = profile[n];
            obs.own_payoff = utilities[n];
            if (modes[n] == ObservationMode::full) obs.joint_action = profile;
            if (config.information) obs.exchanged = config.information(t, n);
            result.learners[n].observe(game, obs);
        }
        if (config.record_regrets) {
            for (std::size_t n = 0; n < players; ++n) {
                accumulators[n].record(game, profile);
                regrets[n] = accumulators[n].regrets();
            }
        }
        result.trace.append(profile, utilities, regrets);
    }
    return result;
}

std::vector<double> regret_vector(const LearningTrace& trace, const NormalFormGame& game, std::size_t player,
                                  std::size_t t) {
    require(trace.action_counts() == game.action_counts(), "trace does not match the game");
    require(player < game.players(), "player index out of range");
    require(t >= 1 && t <= trace.rounds(), "regret horizon outside the trace");
    RegretAccumulator acc(game, player);
    for (std::size_t round = 0; round < t; ++round) acc.record(game, trace.joint_action(round));
    return acc.regrets();
}

double max_regret(const LearningTrace& trace, const NormalFormGame& game) {
    double worst = 0.0;
    for (std::size_t n = 0; n < game.players(); ++n) {
        for (double r : regret_vector(trace, game, n, trace.rounds())) worst = std::max(worst, r);
    }
    return worst;
}

JointDistribution empirical_joint_distribution(const LearningTrace& trace, const NormalFormGame& game) {
    require(trace.action_counts() == game.action_counts(), "trace does not match the game");
    require(trace.rounds() >= 1, "empty trace");
    std::vector<double> counts(game.profile_count(), 0.0);
    for (std::size_t t = 0; t < trace.rounds(); ++t) counts[game.index_of(trace.joint_action(t))] += 1.0;
    for (double& c : counts) c /= static_cast<double>(trace.rounds());
    return JointDistribution(std::move(counts));
}

std::vector<double> value_of_learning(const LearningTrace& trace, std::size_t first, std::size_t length) {
    if (length == 0) throw Error(ErrorCode::empty_window, "value of learning needs a non-empty window");
    require(first + length <= trace.rounds(), "window extends past the end of the trace");
    std::vector<double> total(trace.players(), 0.0);
    for (std::size_t t = first; t < first + length; ++t) {
        auto u = trace.utilities(t);
        for (std::size_t n = 0; n < total.size(); ++n) total[n] += u[n];
    }
    for (double& v : total) v /= static_cast<double>(length);
    return total;
}

}  // namespace specgame
