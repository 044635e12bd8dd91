#pragma once

// Equilibria of the power control game over discretized transmit PSDs:
// iterative water-filling (Nash), leader/follower search (Stackelberg),
// weighted rate-sum grid oracle (Pareto), and rate-region sweeps.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specgame/spectrum.hpp"

namespace specgame {

struct IwOptions {
    double tol = 1e-8;
    std::size_t max_iter = 500;
};

struct IwResult {
    PowerAllocation allocation;
    std::vector<double> rates;
    std::size_t iterations = 0;
    bool converged = false;
    /// Largest PSD change during the last sweep.
    double residual = 0.0;
};

/// Gauss-Seidel best-response water-filling, users updated in index order,
/// starting from silence. Non-convergence is reported, not thrown.
IwResult iterative_water_filling(const ChannelSet& channels, const NoiseProfile& noise,
                                 const PowerBudget& budgets, const FrequencyGrid& grid,
                                 const IwOptions& options = {});

/// Best-response PSD of `user` against every other user's row in `alloc`.
std::vector<double> best_response_psd(std::size_t user, const PowerAllocation& alloc,
                                      const ChannelSet& channels, const NoiseProfile& noise,
                                      const PowerBudget& budgets, const FrequencyGrid& grid);

struct FollowerResponse {
    std::vector<double> follower_psd;
    std::vector<double> rates;
};

/// Follower water-fills against the leader's committed PSD (two users).
FollowerResponse follower_response_rates(std::size_t leader, std::span<const double> leader_psd,
                                         const ChannelSet& channels, const NoiseProfile& noise,
                                         const PowerBudget& budgets, const FrequencyGrid& grid);

struct StackelbergOptions {
    /// Units the leader budget is split into, for the simplex grid and the
    /// coordinate-descent transfer step.
    std::size_t levels = 10;
    std::size_t refine_rounds = 20;
    /// Grids with at most this many bins are enumerated exhaustively.
    std::size_t enumerate_max_bins = 4;
    IwOptions iw;
};

struct StackelbergResult {
    std::size_t leader = 0;
    std::vector<double> leader_psd;
    std::vector<double> follower_psd;
    std::vector<double> rates;
    std::size_t candidates_evaluated = 0;
    /// Leader rate at the iterative water-filling equilibrium.
    std::vector<double> nash_rates;
    bool nash_converged = false;
};

/// Sub-optimal leader search for the two-user bi-level program. The Nash
/// allocation is always a candidate, so the leader never does worse than at
/// a converged Nash point.
StackelbergResult stackelberg_leader_search(std::size_t leader, const ChannelSet& channels,
                                            const NoiseProfile& noise, const PowerBudget& budgets,
                                            const FrequencyGrid& grid,
                                            const StackelbergOptions& options = {});

/// Best leader commitment from an explicit candidate list (first wins ties).
StackelbergResult stackelberg_over_candidates(std::size_t leader,
                                              std::span<const std::vector<double>> candidates,
                                              const ChannelSet& channels, const NoiseProfile& noise,
                                              const PowerBudget& budgets, const FrequencyGrid& grid);

enum class RegionMethod { iw, stackelberg, pareto };

const char* to_string(RegionMethod method);
RegionMethod region_method_from_string(const std::string& name);

struct RegionSample {
    RegionMethod method = RegionMethod::iw;
    /// Budgets for iw/stackelberg, weights for pareto.
    std::vector<double> params;
    std::vector<double> rates;
    bool converged = true;
};

struct ParetoOptions {
    std::size_t levels = 10;
    /// Cap on joint allocations evaluated by the exhaustive oracle.
    double max_evaluations = 1.2e8;
};

struct WeightedSumResult {
    RegionSample sample;
    PowerAllocation allocation;
    double objective = 0.0;
    double evaluations = 0.0;
};

/// Exhaustive maximizer of sum_n w_n R_n over per-user allocations on the
/// simplex grid (units may sum to less than the budget). Ties keep the
/// lexicographically first joint allocation.
WeightedSumResult weighted_sum_optimize(std::span<const double> weights, const ChannelSet& channels,
                                        const NoiseProfile& noise, const PowerBudget& budgets,
                                        const FrequencyGrid& grid, const ParetoOptions& options = {});

/// Rate pairs of the exhaustive grid that no other grid allocation weakly
/// improves on, sorted by decreasing R_1. Two users only. Every weighted
/// rate-sum maximizer lies on this set.
std::vector<RegionSample> grid_pareto_frontier(const ChannelSet& channels, const NoiseProfile& noise,
                                               const PowerBudget& budgets, const FrequencyGrid& grid,
                                               const ParetoOptions& options = {});

struct RegionOptions {
    IwOptions iw;
    std::size_t leader = 0;
    StackelbergOptions stackelberg;
    ParetoOptions pareto;
};

/// One sample per sweep point. For iw and stackelberg each point is a budget
/// vector; for pareto each point is a weight vector applied with
/// `base_budgets`.
std::vector<RegionSample> rate_region_sweep(RegionMethod method, const ChannelSet& channels,
                                            const NoiseProfile& noise, const FrequencyGrid& grid,
                                            std::span<const std::vector<double>> points,
                                            const PowerBudget& base_budgets,
                                            const RegionOptions& options = {});

/// True when `a` is componentwise >= `b` - tol.
bool weakly_dominates(std::span<const double> a, std::span<const double> b, double tol = 0.0);

}  // namespace specgame
