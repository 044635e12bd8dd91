#pragma once

// Solution concepts for finite normal-form games.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "specgame/normal_form.hpp"

namespace specgame {

/// Payoff differences below this are treated as ties.
inline constexpr double kPayoffTieTolerance = 1e-12;

NormalFormGame build_contention_game();

/// Every best action of `player` against the other entries of `profile`
/// (its own entry is ignored), in ascending index order.
std::vector<std::size_t> best_response(const NormalFormGame& game, std::size_t player,
                                       std::span<const std::size_t> profile);

/// Action strictly better than every alternative against every opponent
/// profile. A single-action player trivially has one.
std::optional<std::size_t> strictly_dominant_action(const NormalFormGame& game, std::size_t player);

/// All pure Nash equilibria in lexicographic profile order.
std::vector<Profile> pure_nash(const NormalFormGame& game);

struct MixedNash2x2 {
    MixedStrategy strategy;
    std::array<double, 2> utilities{};
};

/// Interior (fully mixed) equilibrium of a 2x2 game from the indifference
/// conditions. Throws ErrorCode::degenerate when none exists.
MixedNash2x2 mixed_nash_2x2(const NormalFormGame& game);

struct StackelbergOutcome {
    Profile profile;
    std::vector<double> utilities;
};

/// Leader commits first; the follower best-responds with ties broken in the
/// leader's favour. Two players only.
StackelbergOutcome stackelberg_finite(const NormalFormGame& game, std::size_t leader);

struct CeCheck {
    bool is_equilibrium = false;
    double max_violation = 0.0;
};

/// Largest expected gain any player gets from deviating from a recommended
/// action, and whether it stays within `tol`.
CeCheck is_correlated_equilibrium(const NormalFormGame& game, const JointDistribution& dist,
                                  double tol);

struct CeOptimum {
    JointDistribution distribution;
    double value = 0.0;
};

/// Correlated equilibrium maximizing sum_n w_n E[u_n], solved as a linear
/// program. Limited to 64 joint profiles.
CeOptimum optimize_ce(const NormalFormGame& game, std::span<const double> weights);

}  // namespace specgame
