#include "specgame/matrix_games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specgame/error.hpp"
#include "specgame/linear_program.hpp"

namespace specgame {

NormalFormGame build_contention_game() {
    // Profiles (A,A), (A,B), (B,A), (B,B).
    return NormalFormGame({2, 2}, {0, 0, 7, 2, 2, 7, 6, 6},
                          {{"Aggress", "Backoff"}, {"Aggress", "Backoff"}});
}

std::vector<std::size_t> best_response(const NormalFormGame& game, std::size_t player,
                                       std::span<const std::size_t> profile) {
    require(player < game.players(), "player index out of range");
    require(profile.size() == game.players(), "profile length does not match player count");
    Profile trial(profile.begin(), profile.end());
    std::vector<double> values(game.actions(player));
    for (std::size_t a = 0; a < values.size(); ++a) {
        trial[player] = a;
        values[a] = game.utility(player, trial);
    }
    const double best = *std::max_element(values.begin(), values.end());
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < values.size(); ++a) {
        if (values[a] >= best - kPayoffTieTolerance) out.push_back(a);
    }
    return out;
}

std::optional<std::size_t> strictly_dominant_action(const NormalFormGame& game, std::size_t player) {
    require(player < game.players(), "player index out of range");
    const std::size_t actions = game.actions(player);
    for (std::size_t candidate = 0; candidate < actions; ++candidate) {
        bool dominant = true;
        for (std::size_t i = 0; i < game.profile_count() && dominant; ++i) {
            auto profile = game.profile_at(i);
            if (profile[player] != candidate) continue;
            const double own = game.utility(player, profile);
            for (std::size_t other = 0; other < actions && dominant; ++other) {
                if (other == candidate) continue;
                profile[player] = other;
                if (!(own > game.utility(player, profile) + kPayoffTieTolerance)) dominant = false;
                profile[player] = candidate;
            }
        }
        if (dominant) return candidate;
    }
    return std::nullopt;
}

std::vector<Profile> pure_nash(const NormalFormGame& game) {
    std::vector<Profile> out;
    for (std::size_t i = 0; i < game.profile_count(); ++i) {
        auto profile = game.profile_at(i);
        bool stable = true;
        for (std::size_t n = 0; n < game.players() && stable; ++n) {
            auto responses = best_response(game, n, profile);
            stable = std::binary_search(responses.begin(), responses.end(), profile[n]);
        }
        if (stable) out.push_back(std::move(profile));
    }
    return out;
}

MixedNash2x2 mixed_nash_2x2(const NormalFormGame& game) {
    require(game.players() == 2 && game.actions(0) == 2 && game.actions(1) == 2,
            "mixed_nash_2x2 needs a two-player game with two actions each");
    auto u = [&](std::size_t player, std::size_t row, std::size_t col) {
        const std::size_t profile[2] = {row, col};
        return game.utility(player, profile);
    };
    // Row player's mix makes the column player indifferent, and vice versa.
    const double row_denom = u(1, 0, 0) - u(1, 1, 0) - u(1, 0, 1) + u(1, 1, 1);
    const double col_denom = u(0, 0, 0) - u(0, 0, 1) - u(0, 1, 0) + u(0, 1, 1);
    if (std::abs(row_denom) < kPayoffTieTolerance || std::abs(col_denom) < kPayoffTieTolerance) {
        throw Error(ErrorCode::degenerate, "degenerate: indifference system is singular");
    }
    const double p = (u(1, 1, 1) - u(1, 1, 0)) / row_denom;
    const double q = (u(0, 1, 1) - u(0, 0, 1)) / col_denom;
    auto interior = [](double x) { return x > 1e-12 && x < 1.0 - 1e-12; };
    if (!interior(p) || !interior(q)) {
        throw Error(ErrorCode::degenerate, "degenerate: no fully mixed equilibrium");
    }

    MixedNash2x2 out;
    out.strategy.probabilities = {{p, 1.0 - p}, {q, 1.0 - q}};
    out.utilities[0] = q * u(0, 0, 0) + (1.0 - q) * u(0, 0, 1);
    out.utilities[1] = p * u(1, 0, 0) + (1.0 - p) * u(1, 1, 0);
    return out;
}

StackelbergOutcome stackelberg_finite(const NormalFormGame& game, std::size_t leader) {
    require(game.players() == 2, "finite Stackelberg is defined for two players");
    require(leader < 2, "leader index out of range");
    const std::size_t follower = 1 - leader;

    StackelbergOutcome best;
    double best_value = -std::numeric_limits<double>::infinity();
    Profile profile(2, 0);
    for (std::size_t a = 0; a < game.actions(leader); ++a) {
        profile[leader] = a;
        // Optimistic tie-break: among follower best responses take the one
        // the leader likes most (lowest index on further ties).
        std::size_t chosen = 0;
        double chosen_value = -std::numeric_limits<double>::infinity();
        for (std::size_t b : best_response(game, follower, profile)) {
            profile[follower] = b;
            const double v = game.utility(leader, profile);
            if (v > chosen_value + kPayoffTieTolerance) {
                chosen_value = v;
                chosen = b;
            }
        }
        profile[follower] = chosen;
        if (chosen_value > best_value + kPayoffTieTolerance) {
            best_value = chosen_value;
            best.profile = profile;
        }
    }
    auto u = game.payoff(best.profile);
    best.utilities.assign(u.begin(), u.end());
    return best;
}

CeCheck is_correlated_equilibrium(const NormalFormGame& game, const JointDistribution& dist, double tol) {
    require(dist.size() == game.profile_count(), "distribution does not match the game");
    double worst = 0.0;
    for (std::size_t n = 0; n < game.players(); ++n) {
        const std::size_t actions = game.actions(n);
        // gain[a][a']: expected gain from playing a' whenever a is recommended.
        std::vector<double> gain(actions * actions, 0.0);
        for (std::size_t i = 0; i < game.profile_count(); ++i) {
            const double mass = dist[i];
            if (mass == 0.0) continue;
            auto profile = game.profile_at(i);
            const std::size_t recommended = profile[n];
            const double obey = game.utility(n, profile);
            for (std::size_t dev = 0; dev < actions; ++dev) {
                if (dev == recommended) continue;
                profile[n] = dev;
                gain[recommended * actions + dev] += mass * (game.utility(n, profile) - obey);
            }
        }
        for (double g : gain) worst = std::max(worst, g);
    }
    return {worst <= tol, worst};
}

CeOptimum optimize_ce(const NormalFormGame& game, std::span<const double> weights) {
    require(weights.size() == game.players(), "one weight per player required");
    require(game.profile_count() <= 64, "CE optimization is limited to 64 joint profiles",
            ErrorCode::oracle_scale_exceeded);

    const std::size_t profiles = game.profile_count();
    LinearProgram lp;
    lp.objective.assign(profiles, 0.0);
    for (std::size_t i = 0; i < profiles; ++i) {
        auto u = game.payoff_at(i);
        for (std::size_t n = 0; n < weights.size(); ++n) lp.objective[i] += weights[n] * u[n];
    }
    for (std::size_t n = 0; n < game.players(); ++n) {
        for (std::size_t a = 0; a < game.actions(n); ++a) {
            for (std::size_t dev = 0; dev < game.actions(n); ++dev) {
                if (dev == a) continue;
                std::vector<double> row(profiles, 0.0);
                for (std::size_t i = 0; i < profiles; ++i) {
                    auto profile = game.profile_at(i);
                    if (profile[n] != a) continue;
                    const double obey = game.utility(n, profile);
                    profile[n] = dev;
                    row[i] = game.utility(n, profile) - obey;
                }
                lp.le_rows.push_back(std::move(row));
                lp.le_rhs.push_back(0.0);
            }
        }
    }
    lp.eq_rows.push_back(std::vector<double>(profiles, 1.0));
    lp.eq_rhs.push_back(1.0);

    auto solution = solve_lp(lp);
    if (solution.status != LpStatus::optimal) {
        throw Error(ErrorCode::internal, "CE linear program did not reach an optimum");
    }
    double total = 0.0;
    for (double& x : solution.x) {
        if (x < 0.0) x = 0.0;
        total += x;
    }
    for (double& x : solution.x) x /= total;
    CeOptimum out{JointDistribution(std::move(solution.x)), 0.0};
    auto values = out.distribution.expected_utilities(game);
    for (std::size_t n = 0; n < weights.size(); ++n) out.value += weights[n] * values[n];
    return out;
}

}  // namespace specgame
