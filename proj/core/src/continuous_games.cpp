#include "specgame/continuous_games.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "specgame/allocation_grid.hpp"
#include "specgame/error.hpp"

namespace specgame {

namespace {

void check_scenario(const ChannelSet& channels, const NoiseProfile& noise, const PowerBudget& budgets,
                    const FrequencyGrid& grid) {
    require(channels.users() == noise.users() && channels.users() == budgets.users(),
            "user count mismatch between channels, noise and budgets");
    require(channels.bins() == grid.bins() && noise.bins() == grid.bins(),
            "bin count mismatch between channels, noise and grid");
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

struct LeaderEvaluator {
    std::size_t leader;
    std::size_t follower;
    const ChannelSet& channels;
    const NoiseProfile& noise;
    const PowerBudget& budgets;
    const FrequencyGrid& grid;

    FollowerResponse operator()(std::span<const double> leader_psd) const {
        PowerAllocation alloc(2, grid.bins());
        alloc.set_row(leader, leader_psd);
        auto interference = effective_noise(follower, alloc, channels, noise);
        FollowerResponse out;
        out.follower_psd =
            water_fill(channels.gains(follower, follower), interference, budgets[follower], grid).psd;
        alloc.set_row(follower, out.follower_psd);
        out.rates = achievable_rates(alloc, channels, noise, grid);
        return out;
    }
};

bool improves(double candidate, double best) {
    return candidate > best + 1e-12 * std::max(1.0, std::abs(best));
}

}  // namespace

IwResult iterative_water_filling(const ChannelSet& channels, const NoiseProfile& noise,
                                 const PowerBudget& budgets, const FrequencyGrid& grid,
                                 const IwOptions& options) {
    check_scenario(channels, noise, budgets, grid);
    require(options.tol > 0.0, "IW tolerance must be positive");
    require(options.max_iter >= 1, "IW max_iter must be at least 1");

    const std::size_t users = channels.users();
    IwResult result{PowerAllocation(users, grid.bins()), {}, 0, false, 0.0};
    for (std::size_t sweep = 1; sweep <= options.max_iter; ++sweep) {
        double change = 0.0;
        for (std::size_t n = 0; n < users; ++n) {
            auto response = best_response_psd(n, result.allocation, channels, noise, budgets, grid);
            change = std::max(change, max_abs_diff(response, result.allocation.row(n)));
            result.allocation.set_row(n, response);
        }
        result.iterations = sweep;
        result.residual = change;
        if (change <= options.tol) {
            result.converged = true;
            break;
        }
    }
    result.rates = achievable_rates(result.allocation, channels, noise, grid);
    return result;
}

std::vector<double> best_response_psd(std::size_t user, const PowerAllocation& alloc,
                                      const ChannelSet& channels, const NoiseProfile& noise,
                                      const PowerBudget& budgets, const FrequencyGrid& grid) {
    require(user < budgets.users(), "user index out of range");
    auto interference = effective_noise(user, alloc, channels, noise);
    return water_fill(channels.gains(user, user), interference, budgets[user], grid).psd;
}

FollowerResponse follower_response_rates(std::size_t leader, std::span<const double> leader_psd,
                                         const ChannelSet& channels, const NoiseProfile& noise,
                                         const PowerBudget& budgets, const FrequencyGrid& grid) {
    check_scenario(channels, noise, budgets, grid);
    require(channels.users() == 2, "leader/follower response is defined for two users");
    require(leader < 2, "leader index out of range");
    require(leader_psd.size() == grid.bins(), "leader PSD does not match the grid");
    return LeaderEvaluator{leader, 1 - leader, channels, noise, budgets, grid}(leader_psd);
}

StackelbergResult stackelberg_over_candidates(std::size_t leader,
                                              std::span<const std::vector<double>> candidates,
                                              const ChannelSet& channels, const NoiseProfile& noise,
                                              const PowerBudget& budgets, const FrequencyGrid& grid) {
    check_scenario(channels, noise, budgets, grid);
    require(channels.users() == 2, "Stackelberg search is defined for two users");
    require(leader < 2, "leader index out of range");
    require(!candidates.empty(), "need at least one leader candidate");

    LeaderEvaluator evaluate{leader, 1 - leader, channels, noise, budgets, grid};
    StackelbergResult best;
    best.leader = leader;
    bool have = false;
    for (const auto& candidate : candidates) {
        require(candidate.size() == grid.bins(), "leader candidate does not match the grid");
        auto response = evaluate(candidate);
        ++best.candidates_evaluated;
        if (!have || improves(response.rates[leader], best.rates[leader])) {
            best.leader_psd = candidate;
            best.follower_psd = std::move(response.follower_psd);
            best.rates = std::move(response.rates);
            have = true;
        }
    }
    return best;
}

StackelbergResult stackelberg_leader_search(std::size_t leader, const ChannelSet& channels,
                                            const NoiseProfile& noise, const PowerBudget& budgets,
                                            const FrequencyGrid& grid,
                                            const StackelbergOptions& options) {
    check_scenario(channels, noise, budgets, grid);
    require(channels.users() == 2, "Stackelberg search is defined for two users");
    require(leader < 2, "leader index out of range");
    require(options.levels >= 2, "Stackelberg levels must be at least 2");

    const auto nash = iterative_water_filling(channels, noise, budgets, grid, options.iw);
    const auto nash_row = nash.allocation.row(leader);

    std::vector<std::vector<double>> candidates;
    candidates.emplace_back(nash_row.begin(), nash_row.end());
    const auto levels = static_cast<unsigned>(options.levels);
    if (grid.bins() <= options.enumerate_max_bins) {
        for (const auto& split : simplex_grid(grid.bins(), levels, false)) {
            candidates.push_back(split_to_psd(split, budgets[leader], levels, grid));
        }
    }
    auto result = stackelberg_over_candidates(leader, candidates, channels, noise, budgets, grid);

    // Pairwise power transfers between bins, starting from the best candidate.
    LeaderEvaluator evaluate{leader, 1 - leader, channels, noise, budgets, grid};
    double step = budgets[leader] / static_cast<double>(options.levels) / grid.bin_width();
    std::vector<double> psd = result.leader_psd;
    for (std::size_t round = 0; round < options.refine_rounds && grid.bins() > 1; ++round) {
        bool improved = false;
        for (std::size_t from = 0; from < grid.bins(); ++from) {
            for (std::size_t to = 0; to < grid.bins(); ++to) {
                if (from == to || psd[from] <= 0.0) continue;
                auto trial = psd;
                const double delta = std::min(step, psd[from]);
                trial[from] = (delta == psd[from]) ? 0.0 : psd[from] - delta;
                trial[to] += delta;
                auto response = evaluate(trial);
                ++result.candidates_evaluated;
                if (improves(response.rates[leader], result.rates[leader])) {
                    psd = std::move(trial);
                    result.leader_psd = psd;
                    result.follower_psd = std::move(response.follower_psd);
                    result.rates = std::move(response.rates);
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }

    result.nash_rates = nash.rates;
    result.nash_converged = nash.converged;
    return result;
}

const char* to_string(RegionMethod method) {
    switch (method) {
        case RegionMethod::iw: return "iw";
        case RegionMethod::stackelberg: return "stackelberg";
        case RegionMethod::pareto: return "pareto";
    }
    return "unknown";
}

RegionMethod region_method_from_string(const std::string& name) {
    if (name == "iw") return RegionMethod::iw;
    if (name == "stackelberg") return RegionMethod::stackelberg;
    if (name == "pareto") return RegionMethod::pareto;
    throw Error(ErrorCode::structural, "unknown region method '" + name + "'");
}

namespace {

/// Exhaustive enumeration of joint allocations on the per-user simplex grid.
/// Per-bin rates for every joint unit tuple are tabulated once, so each joint
/// allocation costs N*K lookups.
class GridOracle {
  public:
    GridOracle(const ChannelSet& channels, const NoiseProfile& noise, const PowerBudget& budgets,
               const FrequencyGrid& grid, const ParetoOptions& options)
        : users_(channels.users()), bins_(grid.bins()), levels_(static_cast<unsigned>(options.levels)) {
        check_scenario(channels, noise, budgets, grid);
        require(options.levels >= 1, "levels must be positive");
        const double per_user = simplex_grid_size(bins_, levels_, true);
        evaluations_ = std::pow(per_user, static_cast<double>(users_));
        const double codes = std::pow(static_cast<double>(levels_ + 1), static_cast<double>(users_));
        if (evaluations_ > options.max_evaluations || codes > 1e7) {
            std::ostringstream msg;
            msg << "oracle scale exceeded: " << evaluations_ << " joint allocations (cap "
                << options.max_evaluations << ")";
            throw Error(ErrorCode::oracle_scale_exceeded, msg.str());
        }
        codes_ = static_cast<std::size_t>(codes);
        splits_ = simplex_grid(bins_, levels_, true);
        stride_.assign(users_, 1);
        for (std::size_t n = 1; n < users_; ++n) stride_[n] = stride_[n - 1] * (levels_ + 1);

        std::vector<double> unit(users_);
        for (std::size_t n = 0; n < users_; ++n) unit[n] = budgets[n] / levels_ / grid.bin_width();
        table_.assign(users_ * bins_ * codes_, 0.0);
        std::vector<unsigned> tuple(users_);
        for (std::size_t k = 0; k < bins_; ++k) {
            for (std::size_t code = 0; code < codes_; ++code) {
                for (std::size_t n = 0, c = code; n < users_; ++n, c /= (levels_ + 1)) {
                    tuple[n] = static_cast<unsigned>(c % (levels_ + 1));
                }
                for (std::size_t n = 0; n < users_; ++n) {
                    if (tuple[n] == 0) continue;
                    double denom = noise.psd(n)[k];
                    for (std::size_t j = 0; j < users_; ++j) {
                        if (j != n) denom += unit[j] * tuple[j] * channels.gain(j, n, k);
                    }
                    table_[(n * bins_ + k) * codes_ + code] =
                        grid.bin_width() * std::log2(1.0 + unit[n] * tuple[n] * channels.gain(n, n, k) / denom);
                }
            }
        }
    }

    double evaluations() const { return evaluations_; }
    const std::vector<UnitSplit>& splits() const { return splits_; }

    /// Calls visit(index, rates) for every joint allocation in lexicographic
    /// order (user 0 most significant).
    template <typename Visit>
    void for_each(Visit&& visit) const {
        std::vector<std::size_t> index(users_, 0);
        std::vector<double> rates(users_);
        for (bool done = false; !done;) {
            std::fill(rates.begin(), rates.end(), 0.0);
            for (std::size_t k = 0; k < bins_; ++k) {
                std::size_t code = 0;
                for (std::size_t n = 0; n < users_; ++n) code += splits_[index[n]][k] * stride_[n];
                for (std::size_t n = 0; n < users_; ++n) rates[n] += table_[(n * bins_ + k) * codes_ + code];
            }
            visit(static_cast<const std::vector<std::size_t>&>(index), static_cast<const std::vector<double>&>(rates));
            // Odometer with the last user fastest.
            for (std::size_t n = users_;;) {
                if (n == 0) {
                    done = true;
                    break;
                }
                --n;
                if (++index[n] < splits_.size()) break;
                index[n] = 0;
            }
        }
    }

    PowerAllocation allocation(const std::vector<std::size_t>& index, const PowerBudget& budgets,
                               const FrequencyGrid& grid) const {
        PowerAllocation alloc(users_, bins_);
        for (std::size_t n = 0; n < users_; ++n) {
            alloc.set_row(n, split_to_psd(splits_[index[n]], budgets[n], levels_, grid));
        }
        return alloc;
    }

  private:
    std::size_t users_;
    std::size_t bins_;
    unsigned levels_;
    double evaluations_ = 0.0;
    std::size_t codes_ = 0;
    std::vector<UnitSplit> splits_;
    std::vector<std::size_t> stride_;
    std::vector<double> table_;  // [user][bin][code]
};

}  // namespace

WeightedSumResult weighted_sum_optimize(std::span<const double> weights, const ChannelSet& channels,
                                        const NoiseProfile& noise, const PowerBudget& budgets,
                                        const FrequencyGrid& grid, const ParetoOptions& options) {
    check_scenario(channels, noise, budgets, grid);
    const std::size_t users = channels.users();
    require(weights.size() == users, "one weight per user required");
    double weight_sum = 0.0;
    for (double w : weights) {
        require(std::isfinite(w) && w >= 0.0, "weights must be nonnegative");
        weight_sum += w;
    }
    require(weight_sum > 0.0, "weights must not all be zero");

    const GridOracle oracle(channels, noise, budgets, grid, options);
    std::vector<std::size_t> best_index(users, 0);
    double best = -1.0;
    oracle.for_each([&](const std::vector<std::size_t>& index, const std::vector<double>& rates) {
        double objective = 0.0;
        for (std::size_t n = 0; n < users; ++n) objective += weights[n] * rates[n];
        if (objective > best) {
            best = objective;
            best_index = index;
        }
    });

    WeightedSumResult out{{}, oracle.allocation(best_index, budgets, grid), 0.0, oracle.evaluations()};
    out.sample.method = RegionMethod::pareto;
    out.sample.params.assign(weights.begin(), weights.end());
    out.sample.rates = achievable_rates(out.allocation, channels, noise, grid);
    for (std::size_t n = 0; n < users; ++n) out.objective += weights[n] * out.sample.rates[n];
    return out;
}

std::vector<RegionSample> grid_pareto_frontier(const ChannelSet& channels, const NoiseProfile& noise,
                                               const PowerBudget& budgets, const FrequencyGrid& grid,
                                               const ParetoOptions& options) {
    require(channels.users() == 2, "grid frontier extraction is defined for two users");
    const GridOracle oracle(channels, noise, budgets, grid, options);
    std::vector<std::array<double, 2>> points;
    points.reserve(static_cast<std::size_t>(oracle.evaluations()));
    oracle.for_each([&](const std::vector<std::size_t>&, const std::vector<double>& rates) {
        points.push_back({rates[0], rates[1]});
    });
    // Sort by R_1 descending (R_2 descending on ties); keep points that raise
    // the running maximum of R_2.
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a[0] != b[0] ? a[0] > b[0] : a[1] > b[1];
    });
    std::vector<RegionSample> frontier;
    double best_second = -1.0;
    for (const auto& p : points) {
        if (p[1] > best_second) {
            frontier.push_back({RegionMethod::pareto, {}, {p[0], p[1]}, true});
            best_second = p[1];
        }
    }
    return frontier;
}

std::vector<RegionSample> rate_region_sweep(RegionMethod method, const ChannelSet& channels,
                                            const NoiseProfile& noise, const FrequencyGrid& grid,
                                            std::span<const std::vector<double>> points,
                                            const PowerBudget& base_budgets,
                                            const RegionOptions& options) {
    std::vector<RegionSample> out;
    out.reserve(points.size());
    for (const auto& point : points) {
        switch (method) {
            case RegionMethod::pareto: {
                auto r = weighted_sum_optimize(point, channels, noise, base_budgets, grid, options.pareto);
                out.push_back(std::move(r.sample));
                break;
            }
            case RegionMethod::iw: {
                auto r = iterative_water_filling(channels, noise, PowerBudget(point), grid, options.iw);
                out.push_back({RegionMethod::iw, point, r.rates, r.converged});
                break;
            }
            case RegionMethod::stackelberg: {
                auto stackelberg_options = options.stackelberg;
                stackelberg_options.iw = options.iw;
                auto r = stackelberg_leader_search(options.leader, channels, noise, PowerBudget(point),
                                                   grid, stackelberg_options);
                out.push_back({RegionMethod::stackelberg, point, r.rates, r.nash_converged});
                break;
            }
        }
    }
    return out;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - tol) return false;
    }
    return true;
}

}  // namespace specgame
